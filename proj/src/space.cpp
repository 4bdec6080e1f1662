#include "dilhom/space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dilhom {

int descriptor_type(const SpaceDescriptor& d) { return static_cast<int>(d.index()); }

void validate_descriptor(const SpaceDescriptor& d) {
    if (const auto* t0 = std::get_if<Type0Desc>(&d)) {
        if (t0->size < 2) throw std::invalid_argument("type 0: size >= 2 violated");
        if (!(t0->r > 0)) throw std::invalid_argument("type 0: r > 0 violated");
    } else if (const auto* t1 = std::get_if<Type1Desc>(&d)) {
        if (t1->n < 2) throw std::invalid_argument("type 1: n >= 2 violated");
        if (t1->n > (std::int64_t{1} << 20)) throw std::invalid_argument("type 1: n <= 2^20 violated");
        if (!(1.0 <= t1->a && t1->a < t1->b)) throw std::invalid_argument("type 1: 1 <= a < b violated");
    } else {
        const auto& t2 = std::get<Type2Desc>(d);
        if (t2.n < 1) throw std::invalid_argument("type 2: n >= 1 violated");
        if (!(0.0 < t2.alpha && t2.alpha <= 1.0)) throw std::invalid_argument("type 2: 0 < alpha <= 1 violated");
    }
}

std::vector<std::pair<std::int64_t, int>> prime_decompose(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("prime_decompose: n >= 2 required");
    if (n > (std::int64_t{1} << 20)) throw std::invalid_argument("prime_decompose: n <= 2^20 required");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            out.emplace_back(p, k);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Space space_make(const SpaceDescriptor& desc) {
    validate_descriptor(desc);
    Space s;
    s.desc = desc;
    if (const auto* t1 = std::get_if<Type1Desc>(&desc)) {
        for (auto [p, k] : prime_decompose(t1->n)) s.factors.push_back(field_make(p, k));
    }
    return s;
}

Point space_origin(const Space& space) {
    switch (space.type()) {
        case 0: return DiscretePoint{0};
        case 1: {
            FieldPoint fp;
            for (const auto& f : space.factors) fp.factors.push_back(ls_zero(f));
            return fp;
        }
        default: return RealPoint{std::vector<double>(static_cast<size_t>(space.as2().n), 0.0)};
    }
}

static void check_field_point(const Space& space, const FieldPoint& x) {
    if (x.factors.size() != space.factors.size())
        throw std::invalid_argument("point does not match the space's factor count");
    for (size_t s = 0; s < x.factors.size(); ++s)
        if (!(x.factors[s].spec == space.factors[s]))
            throw std::invalid_argument("point factor field does not match the space");
}

FieldPoint fp_sub(const Space& space, const FieldPoint& x, const FieldPoint& y) {
    check_field_point(space, x);
    check_field_point(space, y);
    FieldPoint d;
    for (size_t s = 0; s < x.factors.size(); ++s) d.factors.push_back(ls_sub(x.factors[s], y.factors[s]));
    return d;
}

FieldPoint fp_add(const Space& space, const FieldPoint& x, const FieldPoint& y) {
    check_field_point(space, x);
    check_field_point(space, y);
    FieldPoint d;
    for (size_t s = 0; s < x.factors.size(); ++s) d.factors.push_back(ls_add(x.factors[s], y.factors[s]));
    return d;
}

ExactDistance distance(const Space& space, const Point& x, const Point& y) {
    switch (space.type()) {
        case 0: {
            const auto* px = std::get_if<DiscretePoint>(&x);
            const auto* py = std::get_if<DiscretePoint>(&y);
            if (!px || !py) throw std::invalid_argument("distance: type 0 space expects index points");
            const auto& d0 = space.as0();
            if (px->index < 0 || px->index >= d0.size || py->index < 0 || py->index >= d0.size)
                throw std::invalid_argument("distance: index out of space range");
            if (px->index == py->index) return ExactDistance::zero();
            return ExactDistance::fixed(d0.r);
        }
        case 1: {
            const auto* px = std::get_if<FieldPoint>(&x);
            const auto* py = std::get_if<FieldPoint>(&y);
            if (!px || !py) throw std::invalid_argument("distance: type 1 space expects field points");
            FieldPoint diff = fp_sub(space, *px, *py);
            bool all_zero = true;
            std::int64_t min_val = 0;
            bool have = false;
            for (const auto& s : diff.factors) {
                Valuation v = ls_valuation(s); // throws precision_exhausted when unresolved
                if (v.infinite) continue;
                all_zero = false;
                if (!have || v.value < min_val) {
                    min_val = v.value;
                    have = true;
                }
            }
            if (all_zero) return ExactDistance::zero();
            const auto& d1 = space.as1();
            return ExactDistance::geo(d1.a, d1.b, -min_val);
        }
        default: {
            const auto* px = std::get_if<RealPoint>(&x);
            const auto* py = std::get_if<RealPoint>(&y);
            if (!px || !py) throw std::invalid_argument("distance: type 2 space expects coordinate points");
            const auto& d2 = space.as2();
            if (static_cast<int>(px->coords.size()) != d2.n || static_cast<int>(py->coords.size()) != d2.n)
                throw std::invalid_argument("distance: coordinate dimension mismatch");
            double sq = 0;
            for (int i = 0; i < d2.n; ++i) {
                double t = px->coords[static_cast<size_t>(i)] - py->coords[static_cast<size_t>(i)];
                sq += t * t;
            }
            if (sq == 0) return ExactDistance::zero();
            return ExactDistance::cont(std::pow(std::sqrt(sq), d2.alpha));
        }
    }
}

bool point_known_equal(const Space& space, const Point& x, const Point& y) {
    return distance(space, x, y).is_zero();
}

// Packed constant point: digit i in mixed radix over the factor orders,
// factor 0 least significant.
static FieldPoint constant_point(const Space& space, std::int64_t packed) {
    FieldPoint fp;
    for (const auto& f : space.factors) {
        std::int64_t q = f.order();
        fp.factors.push_back(ls_constant(f, ff_unindex(f, packed % q)));
        packed /= q;
    }
    return fp;
}

/// Regular simplex with unit Euclidean side in R^n: e_i / sqrt(2) plus a
/// symmetric apex on the diagonal.
static std::vector<RealPoint> unit_simplex(int n) {
    std::vector<RealPoint> out;
    for (int i = 0; i < n; ++i) {
        RealPoint p{std::vector<double>(static_cast<size_t>(n), 0.0)};
        p.coords[static_cast<size_t>(i)] = 1.0 / std::sqrt(2.0);
        out.push_back(std::move(p));
    }
    double c = (1.0 + std::sqrt(static_cast<double>(n) + 1.0)) / (static_cast<double>(n) * std::sqrt(2.0));
    out.push_back(RealPoint{std::vector<double>(static_cast<size_t>(n), c)});
    return out;
}

std::vector<Point> sample(const Space& space, std::int64_t count, std::int64_t depth,
                          std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample: count >= 1 required");
    if (depth < 1) throw std::invalid_argument("sample: depth >= 1 required");
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    switch (space.type()) {
        case 0: {
            if (count > space.as0().size) throw std::invalid_argument("sample: count exceeds type 0 size");
            for (std::int64_t i = 0; i < count; ++i) pts.push_back(DiscretePoint{i});
            return pts;
        }
        case 1: {
            const std::int64_t n = space.as1().n;
            for (std::int64_t i = 0; i < std::min(count, n); ++i) pts.push_back(constant_point(space, i));
            std::int64_t prec = 2 * depth + 1;
            while (static_cast<std::int64_t>(pts.size()) < count) {
                FieldPoint fp;
                for (const auto& f : space.factors)
                    fp.factors.push_back(ls_random(f, -depth, depth, prec, rng()));
                bool dup = false;
                for (const auto& q : pts)
                    if (point_known_equal(space, q, fp)) {
                        dup = true;
                        break;
                    }
                if (!dup) pts.push_back(std::move(fp));
            }
            return pts;
        }
        default: {
            int n = space.as2().n;
            if (count >= n + 1)
                for (auto& v : unit_simplex(n)) pts.push_back(std::move(v));
            std::uniform_real_distribution<double> dist(-static_cast<double>(depth),
                                                        static_cast<double>(depth));
            while (static_cast<std::int64_t>(pts.size()) < count) {
                RealPoint p{std::vector<double>(static_cast<size_t>(n))};
                for (auto& c : p.coords) c = dist(rng);
                bool dup = false;
                for (const auto& q : pts)
                    if (point_known_equal(space, q, p)) {
                        dup = true;
                        break;
                    }
                if (!dup) pts.push_back(std::move(p));
            }
            if (count <= n) pts.resize(static_cast<size_t>(count));
            return pts;
        }
    }
}

std::vector<Point> exhaustive_sample(const Space& space, int depth) {
    if (space.type() != 1) throw std::invalid_argument("exhaustive_sample: type 1 space required");
    if (depth < 1) throw std::invalid_argument("exhaustive_sample: depth >= 1 required");
    const std::int64_t n = space.as1().n;
    std::int64_t total = 1;
    for (int j = 0; j < depth; ++j) {
        total *= n;
        if (total > 200000) throw std::invalid_argument("exhaustive_sample: n^depth too large");
    }
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(total));
    for (std::int64_t idx = 0; idx < total; ++idx) {
        FieldPoint fp;
        for (const auto& f : space.factors) {
            LaurentSeries s;
            s.spec = f;
            s.v0 = 0;
            s.coeffs.assign(static_cast<size_t>(depth), ff_zero(f));
            fp.factors.push_back(std::move(s));
        }
        std::int64_t t = idx;
        for (int j = 0; j < depth; ++j) {
            std::int64_t packed = t % n;
            t /= n;
            for (size_t s = 0; s < space.factors.size(); ++s) {
                std::int64_t q = space.factors[s].order();
                fp.factors[s].coeffs[static_cast<size_t>(j)] = ff_unindex(space.factors[s], packed % q);
                packed /= q;
            }
        }
        pts.push_back(std::move(fp));
    }
    return pts;
}

DistanceMatrix distance_matrix(const Space& space, const std::vector<Point>& pts) {
    DistanceMatrix m;
    m.n_points = static_cast<std::int64_t>(pts.size());
    m.entries.assign(static_cast<size_t>(m.n_points * m.n_points), ExactDistance::zero());
    for (std::int64_t i = 0; i < m.n_points; ++i)
        for (std::int64_t j = i + 1; j < m.n_points; ++j) {
            auto d = distance(space, pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    return m;
}

namespace {

// Approximate gcd of positive reals, tolerant to float noise in the inputs.
double approx_gcd(const std::vector<double>& xs, double tol) {
    double g = 0;
    for (double x : xs) {
        double u = std::max(g, x), v = std::min(g, x);
        while (v > tol) {
            double r = std::fabs(std::remainder(u, v));
            if (r < tol) r = 0;
            u = v;
            v = r;
        }
        g = u;
    }
    return g;
}

} // namespace

static void fit_progression(GammaSummary& g);

GammaSummary gamma_observed(const DistanceMatrix& m, double rel_tol, double gap_ratio_threshold) {
    if (m.n_points < 1) throw std::invalid_argument("gamma_observed: empty matrix");
    GammaSummary g;
    g.rel_tol = rel_tol;
    g.gap_ratio_threshold = gap_ratio_threshold;

    // distinct positive distances; exact Geo family detection on the fly
    bool all_geo = true;
    double geo_a = 0, geo_b = 0;
    std::vector<ExactDistance> all;
    for (std::int64_t i = 0; i < m.n_points; ++i)
        for (std::int64_t j = i + 1; j < m.n_points; ++j) {
            const auto& d = m.at(i, j);
            if (d.is_zero()) continue;
            all.push_back(d);
            if (d.kind != ExactDistance::Kind::Geo)
                all_geo = false;
            else if (geo_b == 0) {
                geo_a = d.a;
                geo_b = d.b;
            } else if (d.a != geo_a || d.b != geo_b)
                all_geo = false;
        }
    if (all.empty()) throw std::invalid_argument("gamma_observed: no positive distances");

    std::sort(all.begin(), all.end(),
              [](const ExactDistance& u, const ExactDistance& v) { return exact_cmp(u, v) < 0; });
    for (const auto& d : all)
        if (g.exact.empty() || !exact_eq(g.exact.back(), d)) {
            // collapse float near-duplicates too
            if (!g.values.empty() && std::fabs(d.value() - g.values.back()) <= rel_tol * g.values.back())
                continue;
            g.exact.push_back(d);
            g.values.push_back(d.value());
        }

    g.exact_geo = all_geo && geo_b != 0;
    if (g.values.size() == 1) {
        g.flag = GammaFlag::SingleValue;
        return g;
    }
    if (g.exact_geo) {
        g.flag = GammaFlag::Geometric;
        g.fit_a = geo_a;
        g.fit_b = geo_b;
        g.fit_residual = 0;
        return g;
    }

    fit_progression(g);
    return g;
}

// Float path: fit a geometric progression in log space (in-place on the
// distinct sorted values of `g`).
static void fit_progression(GammaSummary& g) {
    std::vector<double> logdiffs;
    for (size_t i = 1; i < g.values.size(); ++i)
        logdiffs.push_back(std::log(g.values[i]) - std::log(g.values[i - 1]));
    double tol = std::max(g.rel_tol, 1e-12);
    double step = approx_gcd(logdiffs, tol);
    double resid = 0;
    if (step > 0)
        for (double d : logdiffs) resid = std::max(resid, std::fabs(std::remainder(d, step)));
    if (step > std::log(g.gap_ratio_threshold) && resid <= tol) {
        g.flag = GammaFlag::Geometric;
        g.fit_b = std::exp(step);
        double v0 = g.values.front();
        double k = std::floor(std::log(v0) / step + 1e-9);
        double a = v0 / std::pow(g.fit_b, k);
        while (a >= g.fit_b * (1 - g.rel_tol)) a /= g.fit_b;
        while (a < 1.0 - g.rel_tol) a *= g.fit_b;
        if (std::fabs(a - 1.0) <= g.rel_tol) a = 1.0;
        g.fit_a = a;
        g.fit_residual = resid;
    } else {
        g.flag = GammaFlag::DenseLike;
        g.fit_residual = resid;
    }
}

GammaSummary gamma_from_values(std::vector<double> values, double rel_tol,
                               double gap_ratio_threshold) {
    GammaSummary g;
    g.rel_tol = rel_tol;
    g.gap_ratio_threshold = gap_ratio_threshold;
    std::sort(values.begin(), values.end());
    for (double v : values) {
        if (!(v > 0)) throw std::invalid_argument("gamma_from_values: distances must be positive");
        if (g.values.empty() || std::fabs(v - g.values.back()) > rel_tol * g.values.back()) {
            g.values.push_back(v);
            g.exact.push_back(ExactDistance::cont(v));
        }
    }
    if (g.values.empty()) throw std::invalid_argument("gamma_from_values: no distances");
    if (g.values.size() == 1) {
        g.flag = GammaFlag::SingleValue;
        return g;
    }
    fit_progression(g);
    return g;
}

std::string gamma_flag_name(GammaFlag f) {
    switch (f) {
        case GammaFlag::SingleValue: return "single-value";
        case GammaFlag::Geometric: return "geometric-progression";
        case GammaFlag::DenseLike: return "dense-like";
    }
    return "?";
}

} // namespace dilhom
