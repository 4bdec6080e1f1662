#include "dilhom/json_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dilhom {

json field_to_json(const FieldSpec& spec) {
    return json{{"p", spec.p}, {"k", spec.k}, {"modulus", spec.modulus}};
}

FieldSpec field_from_json(const json& j) {
    FieldSpec spec;
    spec.p = j.at("p").get<std::int64_t>();
    spec.k = j.at("k").get<int>();
    spec.modulus = j.at("modulus").get<std::vector<int>>();
    FieldSpec canonical = field_make(spec.p, spec.k);
    if (spec.modulus != canonical.modulus)
        throw std::invalid_argument("field_from_json: non-canonical modulus");
    return spec;
}

json series_to_json(const LaurentSeries& s) {
    json j{{"v0", s.v0}, {"coeffs", s.coeffs}, {"prec", s.prec()}, {"zero", s.zero_flag}};
    if (!s.entire) j["entire"] = false;
    return j;
}

LaurentSeries series_from_json(const FieldSpec& spec, const json& j) {
    LaurentSeries s;
    s.spec = spec;
    s.zero_flag = j.at("zero").get<bool>();
    s.v0 = j.at("v0").get<std::int64_t>();
    s.coeffs = j.at("coeffs").get<std::vector<FieldElement>>();
    s.entire = j.value("entire", true);
    if (s.coeffs.size() != j.at("prec").get<size_t>())
        throw std::invalid_argument("series_from_json: prec does not match coeffs");
    for (const auto& c : s.coeffs)
        if (c.size() != static_cast<size_t>(spec.k))
            throw std::invalid_argument("series_from_json: bad coefficient width");
    return s;
}

json descriptor_to_json(const SpaceDescriptor& d) {
    json params;
    switch (descriptor_type(d)) {
        case 0: {
            const auto& t = std::get<Type0Desc>(d);
            params = {{"size", t.size}, {"r", t.r}};
            break;
        }
        case 1: {
            const auto& t = std::get<Type1Desc>(d);
            params = {{"n", t.n}, {"a", t.a}, {"b", t.b}};
            break;
        }
        default: {
            const auto& t = std::get<Type2Desc>(d);
            params = {{"n", t.n}, {"alpha", t.alpha}};
            break;
        }
    }
    return json{{"type", descriptor_type(d)}, {"params", params}};
}

SpaceDescriptor descriptor_from_json(const json& j) {
    int type = j.at("type").get<int>();
    const json& p = j.at("params");
    SpaceDescriptor d;
    if (type == 0)
        d = Type0Desc{p.at("size").get<std::int64_t>(), p.at("r").get<double>()};
    else if (type == 1)
        d = Type1Desc{p.at("n").get<std::int64_t>(), p.at("a").get<double>(),
                      p.at("b").get<double>()};
    else if (type == 2)
        d = Type2Desc{p.at("n").get<int>(), p.at("alpha").get<double>()};
    else
        throw std::invalid_argument("descriptor_from_json: type must be 0, 1 or 2");
    validate_descriptor(d);
    return d;
}

json point_to_json(const Space& space, const Point& x) {
    switch (space.type()) {
        case 0: return json::array({std::get<DiscretePoint>(x).index});
        case 1: {
            const auto& fp = std::get<FieldPoint>(x);
            json arr = json::array();
            for (const auto& s : fp.factors) arr.push_back(series_to_json(s));
            return arr;
        }
        default: return json(std::get<RealPoint>(x).coords);
    }
}

Point point_from_json(const Space& space, const json& j) {
    switch (space.type()) {
        case 0: {
            std::int64_t idx = j.at(0).get<std::int64_t>();
            if (idx < 0 || idx >= space.as0().size)
                throw std::invalid_argument("point_from_json: index out of range");
            return DiscretePoint{idx};
        }
        case 1: {
            if (j.size() != space.factors.size())
                throw std::invalid_argument("point_from_json: wrong factor count");
            FieldPoint fp;
            for (size_t i = 0; i < space.factors.size(); ++i)
                fp.factors.push_back(series_from_json(space.factors[i], j.at(i)));
            return fp;
        }
        default: {
            RealPoint rp;
            rp.coords = j.get<std::vector<double>>();
            if (rp.coords.size() != static_cast<size_t>(space.as2().n))
                throw std::invalid_argument("point_from_json: wrong dimension");
            return rp;
        }
    }
}

json address_to_json(const Address& a) {
    if (a.empty) return json{{"empty", true}};
    return json{{"mu0", a.mu0}, {"tail", a.tail}};
}

Address address_from_json(const json& j) {
    Address a;
    if (j.value("empty", false)) return a;
    a.empty = false;
    a.mu0 = j.at("mu0").get<std::int64_t>();
    a.tail = j.value("tail", std::vector<int>{});
    return a;
}

namespace {

json ballnode_to_json(const BallNode& n) {
    json j{{"center", n.center},
           {"level", n.level},
           {"branch", n.branch_index},
           {"points", n.points}};
    json kids = json::array();
    for (const auto& c : n.children) kids.push_back(ballnode_to_json(c));
    j["children"] = std::move(kids);
    return j;
}

} // namespace

json balltree_to_json(const BallTree& t) {
    json spheres = json::array();
    for (const auto& s : t.spheres) spheres.push_back(ballnode_to_json(s));
    return json{{"root", t.root}, {"a", t.a}, {"b", t.b}, {"spheres", std::move(spheres)}};
}

json dilation_to_json(const Space& space, const DilationMap& u) {
    if (const auto* a = std::get_if<Type1Affine>(&u)) {
        json units = json::array();
        for (const auto& s : a->units) units.push_back(series_to_json(s));
        return json{{"kind", "affine"},
                    {"units", std::move(units)},
                    {"shift", point_to_json(space, a->shift)}};
    }
    if (const auto* c = std::get_if<Type1Composite>(&u)) {
        json mapping = json::array();
        for (const auto& [from, to] : c->mapping)
            mapping.push_back(json::array(
                {point_to_json(space, from), point_to_json(space, to)}));
        return json{{"kind", "composite"},
                    {"scale_exponent", c->scale_exponent},
                    {"mapping", std::move(mapping)}};
    }
    const auto& s = std::get<Type2Similarity>(u);
    return json{{"kind", "similarity"},
                {"scale", s.scale},
                {"orthogonal", s.orthogonal},
                {"translation", s.translation}};
}

DilationMap dilation_from_json(const Space& space, const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "affine") {
        Type1Affine a;
        const json& units = j.at("units");
        if (units.size() != space.factors.size())
            throw std::invalid_argument("dilation_from_json: wrong unit count");
        for (size_t i = 0; i < units.size(); ++i)
            a.units.push_back(series_from_json(space.factors[i], units.at(i)));
        a.shift = std::get<FieldPoint>(point_from_json(space, j.at("shift")));
        return a;
    }
    if (kind == "composite") {
        Type1Composite c;
        c.scale_exponent = j.at("scale_exponent").get<std::int64_t>();
        for (const auto& pair : j.at("mapping"))
            c.mapping.emplace_back(std::get<FieldPoint>(point_from_json(space, pair.at(0))),
                                   std::get<FieldPoint>(point_from_json(space, pair.at(1))));
        return c;
    }
    if (kind == "similarity") {
        Type2Similarity s;
        s.scale = j.at("scale").get<double>();
        s.orthogonal = j.at("orthogonal").get<std::vector<std::vector<double>>>();
        s.translation = j.at("translation").get<std::vector<double>>();
        return s;
    }
    throw std::invalid_argument("dilation_from_json: unknown kind " + kind);
}

json report_to_json(const ClassificationReport& r) {
    json j;
    j["detected_type"] = r.detected_type;
    j["params"] = descriptor_to_json(r.params);
    j["clique_witness"] = r.clique_witness;
    j["gamma"] = {{"values", r.gamma.values},
                  {"flag", gamma_flag_name(r.gamma.flag)},
                  {"exact_geo", r.gamma.exact_geo},
                  {"fit_a", r.gamma.fit_a},
                  {"fit_b", r.gamma.fit_b},
                  {"fit_residual", r.gamma.fit_residual}};
    j["geometric_fit_residual"] = r.geometric_fit_residual;
    j["alpha_estimate"] = r.alpha_estimate;
    j["tolerances"] = {{"rel_tol", r.tolerances.rel_tol}, {"gap_ratio", r.tolerances.gap_ratio}};
    j["n_is_lower_bound"] = r.n_is_lower_bound;
    j["a_directly_observed"] = r.a_directly_observed;
    j["notes"] = r.notes;
    return j;
}

json sweep_to_json(const SweepResult& r) {
    json j{{"property", r.property},
           {"checked", r.checked},
           {"violations", r.violations},
           {"seconds", r.seconds}};
    if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
    return j;
}

std::string distmat_to_csv(const DistanceMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    for (std::int64_t j = 0; j < m.n_points; ++j) {
        if (j) out << ',';
        out << 'p' << j;
    }
    out << '\n';
    for (std::int64_t i = 0; i < m.n_points; ++i) {
        for (std::int64_t j = 0; j < m.n_points; ++j) {
            if (j) out << ',';
            out << m.at(i, j).value();
        }
        out << '\n';
    }
    return out.str();
}

json distmat_sidecar(const DistanceMatrix& m) {
    json entries = json::array();
    for (std::int64_t i = 0; i < m.n_points; ++i)
        for (std::int64_t j = i + 1; j < m.n_points; ++j) {
            const ExactDistance& d = m.at(i, j);
            if (d.kind == ExactDistance::Kind::Geo)
                entries.push_back(json{{"i", i}, {"j", j}, {"a", d.a}, {"b", d.b}, {"k", d.k}});
            else if (d.kind == ExactDistance::Kind::Fixed)
                entries.push_back(json{{"i", i}, {"j", j}, {"r", d.r}});
        }
    return json{{"n", m.n_points}, {"entries", std::move(entries)}};
}

DistanceMatrix distmat_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("distmat_from_csv: empty input");
    std::int64_t n = line.empty() ? 0 : 1;
    for (char c : line)
        if (c == ',') ++n;
    if (n < 1) throw std::invalid_argument("distmat_from_csv: empty header");
    DistanceMatrix m;
    m.n_points = n;
    m.entries.assign(static_cast<size_t>(n * n), ExactDistance::zero());
    for (std::int64_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::invalid_argument("distmat_from_csv: missing row " + std::to_string(i));
        std::istringstream row(line);
        std::string cell;
        for (std::int64_t j = 0; j < n; ++j) {
            if (!std::getline(row, cell, ','))
                throw std::invalid_argument("distmat_from_csv: short row " + std::to_string(i));
            double v = std::stod(cell);
            if (v < 0 || !std::isfinite(v))
                throw std::invalid_argument("distmat_from_csv: bad entry at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            m.at(i, j) = v == 0 ? ExactDistance::zero() : ExactDistance::cont(v);
        }
    }
    for (std::int64_t i = 0; i < n; ++i) {
        if (!m.at(i, i).is_zero())
            throw std::invalid_argument("distmat_from_csv: nonzero diagonal");
        for (std::int64_t j = 0; j < n; ++j)
            if (m.at(i, j).value() != m.at(j, i).value())
                throw std::invalid_argument("distmat_from_csv: matrix not symmetric");
    }
    return m;
}

void distmat_apply_sidecar(DistanceMatrix& m, const json& sidecar) {
    if (sidecar.at("n").get<std::int64_t>() != m.n_points)
        throw std::invalid_argument("sidecar: size mismatch");
    for (const auto& e : sidecar.at("entries")) {
        std::int64_t i = e.at("i").get<std::int64_t>();
        std::int64_t j = e.at("j").get<std::int64_t>();
        if (i < 0 || j < 0 || i >= m.n_points || j >= m.n_points)
            throw std::invalid_argument("sidecar: index out of range");
        ExactDistance d = e.contains("k")
                              ? ExactDistance::geo(e.at("a").get<double>(),
                                                   e.at("b").get<double>(),
                                                   e.at("k").get<std::int64_t>())
                              : ExactDistance::fixed(e.at("r").get<double>());
        double csv_v = m.at(i, j).value();
        if (csv_v > 0 && std::fabs(csv_v - d.value()) > 1e-9 * d.value())
            throw std::invalid_argument("sidecar: entry disagrees with the CSV value");
        m.at(i, j) = d;
        m.at(j, i) = d;
    }
}

} // namespace dilhom
