#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dilhom/classify.hpp"
#include "dilhom/dilation.hpp"
#include "dilhom/json_io.hpp"
#include "dilhom/product.hpp"
#include "dilhom/verify.hpp"

using namespace dilhom;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DILATION_SPACES_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text << "\n";
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

Space load_space(const std::string& path) {
    return space_make(descriptor_from_json(load_json(path)));
}

const char* property_explanation(const std::string& p) {
    if (p == "ultrametric")
        return "every triple x,y,z satisfies d(x,z) <= max(d(x,y), d(y,z)) exactly";
    if (p == "gamma")
        return "every positive distance is a*b^k for one shared (a,b) and an integer k";
    if (p == "scale-hom")
        return "the scale of a composed dilation is the product of the scales";
    if (p == "two-point")
        return "for any a,b,c with b,c distinct from a there is a dilation fixing a and "
               "sending b to c";
    if (p == "coding")
        return "tree addresses reproduce every pairwise distance of an ultrametric sample";
    if (p == "translation") return "adding a constant point to both arguments preserves distance";
    return "";
}

int run(int argc, char** argv) {
    CLI::App app{"Construction, coding, dilation and classification of two-point "
                 "dilation-homogeneous metric spaces"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    // space make/sample/distmat
    auto* space_cmd = app.add_subcommand("space", "Construct and sample spaces");
    space_cmd->require_subcommand(1);

    auto* make_cmd = space_cmd->add_subcommand("make", "Emit a space descriptor");
    int mk_type = 1;
    std::int64_t mk_n = 2, mk_size = 2;
    double mk_a = 1.0, mk_b = 2.0, mk_r = 1.0, mk_alpha = 1.0;
    std::string mk_out;
    make_cmd->add_option("--type", mk_type, "0, 1 or 2")->required();
    make_cmd->add_option("--n", mk_n, "type 1 size parameter / type 2 dimension");
    make_cmd->add_option("--a", mk_a, "type 1 base distance");
    make_cmd->add_option("--b", mk_b, "type 1 ratio");
    make_cmd->add_option("--size", mk_size, "type 0 cardinality");
    make_cmd->add_option("--r", mk_r, "type 0 distance");
    make_cmd->add_option("--alpha", mk_alpha, "type 2 snowflake exponent");
    make_cmd->add_option("--out", mk_out, "output path (default stdout)");
    make_cmd->callback([&] {
        SpaceDescriptor d;
        if (mk_type == 0)
            d = Type0Desc{mk_size, mk_r};
        else if (mk_type == 1)
            d = Type1Desc{mk_n, mk_a, mk_b};
        else if (mk_type == 2)
            d = Type2Desc{static_cast<int>(mk_n), mk_alpha};
        else
            throw std::invalid_argument("--type must be 0, 1 or 2");
        validate_descriptor(d);
        emit(descriptor_to_json(d).dump(2), mk_out);
    });

    auto* sample_cmd = space_cmd->add_subcommand("sample", "Sample pairwise-distinct points");
    std::string sm_space, sm_out;
    std::int64_t sm_count = 10, sm_depth = 3;
    sample_cmd->add_option("--space", sm_space, "descriptor JSON path")->required();
    sample_cmd->add_option("--count", sm_count);
    sample_cmd->add_option("--depth", sm_depth);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--out", sm_out);
    sample_cmd->callback([&] {
        Space sp = load_space(sm_space);
        auto pts = sample(sp, sm_count, sm_depth, seed);
        json out;
        out["space"] = descriptor_to_json(sp.desc);
        out["seed"] = seed;
        json arr = json::array();
        for (const auto& p : pts) arr.push_back(point_to_json(sp, p));
        out["points"] = std::move(arr);
        emit(out.dump(2), sm_out);
    });

    auto* distmat_cmd = space_cmd->add_subcommand("distmat", "Export a sampled distance matrix");
    std::string dm_space, dm_out, dm_sidecar;
    std::int64_t dm_count = 10, dm_depth = 3;
    distmat_cmd->add_option("--space", dm_space, "descriptor JSON path")->required();
    distmat_cmd->add_option("--count", dm_count);
    distmat_cmd->add_option("--depth", dm_depth);
    distmat_cmd->add_option("--seed", seed);
    distmat_cmd->add_option("--out", dm_out, "CSV output path (default stdout)");
    distmat_cmd->add_option("--sidecar", dm_sidecar, "write the exact-entry sidecar JSON here");
    distmat_cmd->callback([&] {
        Space sp = load_space(dm_space);
        auto pts = sample(sp, dm_count, dm_depth, seed);
        DistanceMatrix m = distance_matrix(sp, pts);
        emit(distmat_to_csv(m), dm_out);
        if (!dm_sidecar.empty()) emit(distmat_sidecar(m).dump(2), dm_sidecar);
    });

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Classify a CSV distance matrix");
    std::string cl_input, cl_sidecar, cl_out;
    classify_cmd->add_option("--input", cl_input, "CSV distance matrix")->required();
    classify_cmd->add_option("--sidecar", cl_sidecar, "exact-entry sidecar JSON");
    classify_cmd->add_option("--out", cl_out);
    classify_cmd->callback([&] {
        DistanceMatrix m = distmat_from_csv(slurp(cl_input));
        if (!cl_sidecar.empty()) distmat_apply_sidecar(m, load_json(cl_sidecar));
        emit(report_to_json(classify(m)).dump(2), cl_out);
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run a property sweep");
    std::string vf_property, vf_space;
    std::int64_t vf_count = 50, vf_depth = 3, vf_triples = 200, vf_probes = 20;
    bool vf_serial = false, vf_explain = false;
    verify_cmd
        ->add_option("--property", vf_property,
                     "ultrametric | gamma | scale-hom | two-point | coding | translation")
        ->required();
    verify_cmd->add_option("--space", vf_space, "descriptor JSON path");
    verify_cmd->add_option("--count", vf_count, "sample size");
    verify_cmd->add_option("--depth", vf_depth);
    verify_cmd->add_option("--triples", vf_triples);
    verify_cmd->add_option("--probes", vf_probes);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_flag("--serial", vf_serial, "use the serial reference kernels");
    verify_cmd->add_flag("--explain", vf_explain, "describe the property being checked");
    verify_cmd->callback([&] {
        if (vf_explain)
            std::cout << vf_property << ": " << property_explanation(vf_property) << "\n";
        if (property_explanation(vf_property)[0] == '\0')
            throw std::invalid_argument("unknown property " + vf_property);
        if (vf_space.empty()) throw std::invalid_argument("--space is required");
        Space sp = load_space(vf_space);
        SweepResult r;
        if (vf_property == "ultrametric" || vf_property == "gamma") {
            auto pts = sample(sp, vf_count, vf_depth, seed);
            DistanceMatrix m = distance_matrix(sp, pts);
            r = vf_property == "ultrametric" ? ultrametric_sweep(m, !vf_serial)
                                             : gamma_sweep(m, !vf_serial);
        } else if (vf_property == "translation") {
            r = translation_sweep(sp, vf_triples, vf_depth, seed, !vf_serial);
        } else if (vf_property == "scale-hom") {
            r = scale_hom_sweep(sp, vf_triples, seed);
        } else if (vf_property == "two-point") {
            r = two_point_sweep(sp, vf_triples, vf_probes, vf_count, vf_depth, seed);
        } else {
            r = coding_sweep(sp, vf_count, vf_depth, seed);
        }
        std::cout << "property        checked   violations  status\n";
        std::ostringstream row;
        row.setf(std::ios::left);
        row.width(16);
        row << r.property;
        row.width(10);
        row << r.checked;
        row.width(12);
        row << r.violations;
        row << (r.ok() ? "pass" : "FAIL");
        std::cout << row.str() << "\n" << sweep_to_json(r).dump(2) << "\n";
        if (!r.ok()) std::exit(2);
    });

    // dilate
    auto* dilate_cmd = app.add_subcommand("dilate", "Two-point dilation witness");
    std::string dl_points, dl_out;
    int dl_fix = 0;
    std::vector<int> dl_map;
    dilate_cmd->add_option("--points", dl_points, "sample JSON from `space sample`")->required();
    dilate_cmd->add_option("--fix", dl_fix, "index of the fixed point a")->required();
    dilate_cmd->add_option("--map", dl_map, "indices b c: send b to c")->expected(2)->required();
    dilate_cmd->add_option("--out", dl_out);
    dilate_cmd->callback([&] {
        json in = load_json(dl_points);
        Space sp = space_make(descriptor_from_json(in.at("space")));
        std::vector<Point> pts;
        for (const auto& pj : in.at("points")) pts.push_back(point_from_json(sp, pj));
        int na = static_cast<int>(pts.size());
        if (dl_fix < 0 || dl_fix >= na || dl_map[0] < 0 || dl_map[0] >= na || dl_map[1] < 0 ||
            dl_map[1] >= na)
            throw std::invalid_argument("point index out of range");
        DilationMap u = two_point_witness(sp, pts[static_cast<size_t>(dl_fix)],
                                          pts[static_cast<size_t>(dl_map[0])],
                                          pts[static_cast<size_t>(dl_map[1])], pts);
        json out;
        out["dilation"] = dilation_to_json(sp, u);
        ExactScale sc = scale_of(sp, u);
        out["scale"] = sc.value();
        if (sc.geo) out["scale_exponent"] = sc.k;
        emit(out.dump(2), dl_out);
    });

    // extend
    auto* extend_cmd = app.add_subcommand("extend", "Extend a partial dilation to a sample");
    std::string ex_partial, ex_out;
    extend_cmd
        ->add_option("--partial", ex_partial,
                     "JSON {space, sample: [points], pairs: [[from_idx, to_idx], ...]}")
        ->required();
    extend_cmd->add_option("--out", ex_out);
    extend_cmd->callback([&] {
        json in = load_json(ex_partial);
        Space sp = space_make(descriptor_from_json(in.at("space")));
        std::vector<Point> pts;
        for (const auto& pj : in.at("sample")) pts.push_back(point_from_json(sp, pj));
        PartialMap partial;
        for (const auto& pr : in.at("pairs")) {
            size_t i = pr.at(0).get<size_t>(), j = pr.at(1).get<size_t>();
            if (i >= pts.size() || j >= pts.size())
                throw std::invalid_argument("pair index out of range");
            partial.pairs.emplace_back(pts[i], pts[j]);
        }
        Type1Composite full = extend_partial(sp, pts, partial);
        emit(dilation_to_json(sp, DilationMap{full}).dump(2), ex_out);
    });

    // product
    auto* product_cmd = app.add_subcommand("product", "Product constructions");
    std::string pr_op, pr_input, pr_out;
    int pr_dim = 2, pr_samples = 40;
    bool pr_l1 = false;
    double pr_alpha = 1.0;
    product_cmd->add_option("--op", pr_op, "sup | euclidean | probe")->required();
    product_cmd->add_option("--input", pr_input, "JSON array of factor descriptors");
    product_cmd->add_option("--dim", pr_dim, "probe: ambient dimension");
    product_cmd->add_option("--samples", pr_samples, "probe: candidate pool size");
    product_cmd->add_option("--alpha", pr_alpha, "probe: snowflake exponent of d_e^alpha");
    product_cmd->add_flag("--l1", pr_l1, "probe the l1 metric instead of d_e^alpha");
    product_cmd->add_option("--seed", seed);
    product_cmd->add_option("--out", pr_out);
    product_cmd->callback([&] {
        if (pr_op == "sup" || pr_op == "euclidean") {
            if (pr_input.empty()) throw std::invalid_argument("--input is required");
            json in = load_json(pr_input);
            std::vector<SpaceDescriptor> descs;
            for (const auto& dj : in) descs.push_back(descriptor_from_json(dj));
            if (pr_op == "sup") {
                SupProduct p = sup_product(descs);
                emit(descriptor_to_json(p.combined.desc).dump(2), pr_out);
            } else {
                std::vector<Type2Desc> parts;
                for (const auto& d : descs) {
                    if (descriptor_type(d) != 2)
                        throw std::invalid_argument("euclidean product needs type 2 factors");
                    parts.push_back(std::get<Type2Desc>(d));
                }
                EuclideanProduct p = euclidean_product(parts);
                emit(descriptor_to_json(p.combined).dump(2), pr_out);
            }
            return;
        }
        if (pr_op != "probe") throw std::invalid_argument("--op must be sup, euclidean or probe");
        MetricFn metric;
        if (pr_l1)
            metric = [](const std::vector<double>& x, const std::vector<double>& y) {
                double s = 0;
                for (size_t c = 0; c < x.size(); ++c) s += std::fabs(x[c] - y[c]);
                return s;
            };
        else
            metric = [pr_alpha](const std::vector<double>& x, const std::vector<double>& y) {
                double s = 0;
                for (size_t c = 0; c < x.size(); ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
                return std::pow(std::sqrt(s), pr_alpha);
            };
        ProductProbeReport rep = probe_product_homogeneity(metric, pr_dim, pr_samples, seed);
        json out;
        out["max_equidistant_clique_size"] = rep.max_equidistant_clique_size;
        out["clique_points"] = rep.clique_points;
        out["homogeneity_violations"] = rep.homogeneity_violations;
        out["triples_checked"] = rep.triples_checked;
        emit(out.dump(2), pr_out);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "invalid-argument"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
}
