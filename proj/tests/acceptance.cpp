// Integration gate: one check per release criterion, each printing a single
// pass/fail line. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "dilhom/classify.hpp"
#include "dilhom/coding.hpp"
#include "dilhom/dilation.hpp"
#include "dilhom/product.hpp"
#include "dilhom/verify.hpp"

using namespace dilhom;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d (%s): %s%s%s\n", idx, name, ok ? "pass" : "FAIL",
                detail.empty() ? "" : " - ", detail.c_str());
    if (!ok) ++failures;
}

const std::vector<Type1Desc> kType1Spaces{{2, 1.0, 2.0}, {6, 1.5, 3.0}, {9, 1.0, 1.5}};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion_ultrametric() {
    auto t0 = std::chrono::steady_clock::now();
    std::int64_t violations = 0, checked = 0;
    for (const auto& d : kType1Spaces) {
        Space sp = space_make(d);
        DistanceMatrix m = distance_matrix(sp, sample(sp, 200, 5, 7));
        SweepResult r = ultrametric_sweep(m);
        violations += r.violations;
        checked += r.checked;
    }
    double secs = seconds_since(t0);
    report(1, "ultrametric triples", violations == 0 && secs < 10.0,
           std::to_string(checked) + " triples in " + std::to_string(secs) + "s");
}

void criterion_gamma() {
    std::int64_t violations = 0;
    for (const auto& d : kType1Spaces) {
        Space sp = space_make(d);
        violations += gamma_sweep(distance_matrix(sp, sample(sp, 200, 5, 7))).violations;
    }
    report(2, "gamma structure a*b^k", violations == 0);
}

void criterion_coding() {
    bool ok = true;
    for (std::int64_t n : {2, 6}) {
        Space sp = space_make(Type1Desc{n, 1.0, 2.0});
        auto pts = sample(sp, 500, 6, 19);
        std::vector<Address> addrs;
        for (const auto& p : pts) {
            Address a = canonical_encode(sp, p, 6);
            Point q = canonical_decode(sp, a, 6);
            if (!(canonical_encode(sp, q, 6) == a)) ok = false;
            addrs.push_back(canonical_encode(sp, p, 16));
        }
        DistanceMatrix m = distance_matrix(sp, pts);
        for (std::int64_t i = 0; i < m.n_points && ok; ++i)
            for (std::int64_t j = i + 1; j < m.n_points; ++j)
                if (!exact_eq(m.at(i, j),
                              address_distance(addrs[static_cast<size_t>(i)],
                                               addrs[static_cast<size_t>(j)], 1.0, 2.0))) {
                    ok = false;
                    break;
                }
    }
    report(3, "coding round trip depth 6", ok);
}

void criterion_scale_hom() {
    std::int64_t violations = 0;
    for (const auto& d : kType1Spaces) violations += scale_hom_sweep(space_make(d), 100, 3).violations;
    violations += scale_hom_sweep(space_make(Type2Desc{2, 0.5}), 100, 3).violations;
    report(4, "scale homomorphism", violations == 0);
}

void criterion_two_point() {
    std::int64_t violations = 0;
    for (const auto& d : kType1Spaces)
        violations += two_point_sweep(space_make(d), 100, 50, 60, 3, 5).violations;
    violations += two_point_sweep(space_make(Type2Desc{3, 0.5}), 100, 50, 60, 3, 5).violations;
    report(5, "two-point witnesses", violations == 0);
}

void criterion_extension() {
    Space sp = space_make(Type1Desc{2, 1.0, 2.0});
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(23);
    int rejected = 0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        auto pts = sample(sp, 12, 3, 100 + static_cast<std::uint64_t>(trial));
        DilationMap u = random_dilation(sp, 500 + static_cast<std::uint64_t>(trial));
        std::vector<std::int64_t> dom(12);
        for (std::int64_t i = 0; i < 12; ++i) dom[static_cast<size_t>(i)] = i;
        std::shuffle(dom.begin(), dom.end(), rng);
        PartialMap partial;
        for (int i = 0; i < 4; ++i)
            partial.pairs.emplace_back(pts[static_cast<size_t>(dom[static_cast<size_t>(i)])],
                                       dil_apply(sp, u, pts[static_cast<size_t>(dom[static_cast<size_t>(i)])]));
        try {
            Type1Composite full = extend_partial(sp, pts, partial);
            DistanceMatrix m = distance_matrix(sp, pts);
            // mapping lists the partial's sources first; find each sample
            // point's image by source identity
            std::vector<const FieldPoint*> image(12, nullptr);
            for (std::int64_t i = 0; i < 12; ++i)
                for (const auto& [src, tgt] : full.mapping)
                    if (point_known_equal(sp, src, pts[static_cast<size_t>(i)])) {
                        image[static_cast<size_t>(i)] = &tgt;
                        break;
                    }
            for (std::int64_t i = 0; i < 12 && ok; ++i)
                for (std::int64_t j = i + 1; j < 12; ++j) {
                    ExactDistance img = distance(sp, *image[static_cast<size_t>(i)],
                                                 *image[static_cast<size_t>(j)]);
                    if (!(img.kind == ExactDistance::Kind::Geo &&
                          img.k == m.at(i, j).k + full.scale_exponent)) {
                        ok = false;
                        detail = "pair distance not scaled exactly";
                        break;
                    }
                }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        // injected mismatch: retarget one source so the partial is not a
        // dilation; must be rejected
        PartialMap broken = partial;
        broken.pairs[1].second = broken.pairs[0].second;
        try {
            extend_partial(sp, pts, broken);
        } catch (const std::invalid_argument&) {
            ++rejected;
        }
    }
    report(6, "extension engine", ok && rejected == 50, detail);
}

void criterion_classifier() {
    std::mt19937_64 rng(77);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        int type = trial % 3;
        if (type == 0) {
            std::int64_t size = 2 + static_cast<std::int64_t>(rng() % 6);
            double r = 0.25 * static_cast<double>(1 + rng() % 8);
            Space sp = space_make(Type0Desc{size, r});
            auto rep = classify(distance_matrix(sp, sample(sp, size, 1, 1)));
            if (rep.detected_type != 0 || !(std::get<Type0Desc>(rep.params) == Type0Desc{size, r})) {
                ok = false;
                detail = "type 0 round trip";
            }
        } else if (type == 1) {
            const std::int64_t ns[] = {2, 3, 4, 5, 6, 8, 9, 10};
            Type1Desc d{ns[rng() % 8], 1.0 + 0.25 * static_cast<double>(rng() % 4), 0};
            d.b = d.a + 1.0 + static_cast<double>(rng() % 2);
            Space sp = space_make(d);
            auto rep = classify(distance_matrix(sp, sample(sp, 140, 4, 2 + trial)));
            auto got = std::get<Type1Desc>(rep.params);
            if (rep.detected_type != 1 || got.n != d.n || got.a != d.a || got.b != d.b) {
                ok = false;
                detail = "type 1 round trip";
            }
        } else {
            int n = 1 + static_cast<int>(rng() % 3);
            double alpha = 0.25 * static_cast<double>(1 + rng() % 4);
            double r = 0.5 + 0.1 * static_cast<double>(rng() % 10);
            if (std::fabs(alpha_from_ball_analytic(Type2Desc{n, alpha}, r) - alpha) > 1e-6) {
                ok = false;
                detail = "analytic alpha";
            }
            if (std::fabs(alpha_monte_carlo(Type2Desc{n, alpha}, r, 10000, 9) - alpha) > 0.05) {
                ok = false;
                detail = "monte-carlo alpha";
            }
            Space sp = space_make(Type2Desc{n, alpha});
            auto rep = classify(distance_matrix(sp, sample(sp, 120, 3, 4 + trial)));
            if (rep.detected_type != 2 || std::get<Type2Desc>(rep.params).n != n) {
                ok = false;
                detail = "type 2 n from simplex-seeded sample";
            }
        }
    }
    report(7, "classifier round trip", ok, detail);
}

void criterion_cliques() {
    bool ok = true;
    for (std::int64_t n : {2, 3, 4, 6}) {
        Space sp = space_make(Type1Desc{n, 1.0, 2.0});
        DistanceMatrix m = distance_matrix(sp, exhaustive_sample(sp, 2));
        auto clique = max_equidistant_clique(m, ExactDistance::geo(1.0, 2.0, 0), 1e-9);
        if (static_cast<std::int64_t>(clique.size()) != n) ok = false;
    }
    for (int n : {1, 2, 3}) {
        Space sp = space_make(Type2Desc{n, 1.0});
        DistanceMatrix m = distance_matrix(sp, sample(sp, 30, 2, 6));
        auto clique = max_equidistant_clique(m, ExactDistance::cont(1.0), 1e-9);
        if (static_cast<int>(clique.size()) != n + 1) ok = false;
    }
    report(8, "equidistant clique counts", ok);
}

void criterion_products() {
    bool ok = true;
    std::string detail;

    SupProduct p = sup_product({Type1Desc{2, 1.0, 2.0}, Type1Desc{3, 1.0, 2.0}});
    auto a2 = sample(p.parts[0], 50, 3, 41);
    auto a3 = sample(p.parts[1], 50, 3, 43);
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<size_t> pick(0, 49);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Point> x{a2[pick(rng)], a3[pick(rng)]};
        std::vector<Point> y{a2[pick(rng)], a3[pick(rng)]};
        if (!exact_eq(p.direct_distance(x, y), distance(p.combined, p.pack(x), p.pack(y)))) {
            ok = false;
            detail = "sup_product pack metric";
            break;
        }
    }

    EuclideanProduct ep = euclidean_product({Type2Desc{1, 0.5}, Type2Desc{2, 0.5}});
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    for (int t = 0; t < 1000 && ok; ++t) {
        std::vector<double> x(3), y(3);
        for (auto& c : x) c = unif(rng);
        for (auto& c : y) c = unif(rng);
        double s = 0;
        for (int c = 0; c < 3; ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
        double want = std::pow(std::sqrt(s), 0.5);
        if (std::fabs(ep.metric(x, y) - want) > 1e-12 * want) {
            ok = false;
            detail = "euclidean_product evaluator";
        }
    }

    MetricFn l1 = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (size_t c = 0; c < x.size(); ++c) s += std::fabs(x[c] - y[c]);
        return s;
    };
    MetricFn line = [](const std::vector<double>& x, const std::vector<double>& y) {
        return std::fabs(x[0] - y[0]);
    };
    if (ok && probe_product_homogeneity(l1, 2, 40, 1).max_equidistant_clique_size != 4) {
        ok = false;
        detail = "l1 plane clique";
    }
    if (ok && probe_product_homogeneity(line, 1, 40, 1).max_equidistant_clique_size != 2) {
        ok = false;
        detail = "R_{1,1} clique";
    }
    report(9, "products", ok, detail);
}

void criterion_translation() {
    std::int64_t violations = 0;
    for (const auto& d : kType1Spaces)
        violations += translation_sweep(space_make(d), 1000, 4, 13).violations;
    report(10, "translation invariance", violations == 0);
}

} // namespace

int main() {
    criterion_ultrametric();
    criterion_gamma();
    criterion_coding();
    criterion_scale_hom();
    criterion_two_point();
    criterion_extension();
    criterion_classifier();
    criterion_cliques();
    criterion_products();
    criterion_translation();
    return failures;
}
