#include "dilhom/product.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dilhom/clique.hpp"
#include "dilhom/errors.hpp"

namespace dilhom {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// For one prime of the combined space: which parts contribute, via which of
// their factor fields, and at which offset inside the concatenated
// coefficient vector.
struct PrimeSlice {
    std::int64_t prime = 0;
    struct Piece {
        size_t part;        // index into parts
        size_t part_factor; // index into parts[part].factors
        int width;          // extension degree contributed
        int offset;         // start inside the combined coefficient vector
    };
    std::vector<Piece> pieces;
};

std::vector<PrimeSlice> slice_table(const Space& combined, const std::vector<Space>& parts) {
    std::vector<PrimeSlice> table;
    for (const auto& cf : combined.factors) {
        PrimeSlice sl;
        sl.prime = cf.p;
        int off = 0;
        for (size_t s = 0; s < parts.size(); ++s)
            for (size_t f = 0; f < parts[s].factors.size(); ++f)
                if (parts[s].factors[f].p == cf.p) {
                    sl.pieces.push_back({s, f, parts[s].factors[f].k, off});
                    off += parts[s].factors[f].k;
                }
        if (off != cf.k) throw invariant_violation("sup_product: factor degree mismatch");
        table.push_back(std::move(sl));
    }
    return table;
}

LaurentSeries pack_prime(const FieldSpec& spec, const PrimeSlice& sl,
                         const std::vector<Point>& xs) {
    std::vector<const LaurentSeries*> ss;
    for (const auto& pc : sl.pieces)
        ss.push_back(&std::get<FieldPoint>(xs[pc.part]).factors[pc.part_factor]);

    bool all_zero = std::all_of(ss.begin(), ss.end(),
                                [](const LaurentSeries* s) { return s->zero_flag; });
    if (all_zero) return ls_zero(spec);

    std::int64_t lo = kInf, hi = kInf, hi_entire = -kInf;
    bool entire = true;
    for (const LaurentSeries* s : ss) {
        if (s->zero_flag) continue;
        lo = std::min(lo, s->v0);
        if (s->entire)
            hi_entire = std::max(hi_entire, s->v0 + s->prec());
        else {
            entire = false;
            hi = std::min(hi, s->v0 + s->prec());
        }
    }
    if (entire) hi = std::max(hi_entire, lo + 1);
    if (hi <= lo)
        throw precision_exhausted("sup_product: factor coefficient windows do not overlap");

    LaurentSeries out;
    out.spec = spec;
    out.v0 = lo;
    out.entire = entire;
    for (std::int64_t e = lo; e < hi; ++e) {
        FieldElement c(static_cast<size_t>(spec.k), 0);
        for (size_t i = 0; i < sl.pieces.size(); ++i) {
            FieldElement piece = ss[i]->coeff_at(e);
            std::copy(piece.begin(), piece.end(),
                      c.begin() + sl.pieces[i].offset);
        }
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

} // namespace

SupProduct sup_product(const std::vector<SpaceDescriptor>& descs) {
    if (descs.size() < 2) throw std::invalid_argument("sup_product: need at least 2 factors");
    int t = descriptor_type(descs.front());
    if (t != 0 && t != 1)
        throw std::invalid_argument("sup_product: only type 0 and type 1 factors are supported");

    SupProduct out;
    if (t == 0) {
        const auto& first = std::get<Type0Desc>(descs.front());
        std::int64_t size = 1;
        for (const auto& d : descs) {
            if (descriptor_type(d) != 0)
                throw std::invalid_argument("sup_product: mixed factor types");
            const auto& d0 = std::get<Type0Desc>(d);
            if (d0.r != first.r)
                throw std::invalid_argument("sup_product: factors disagree on r");
            size *= d0.size;
            out.parts.push_back(space_make(d));
        }
        out.combined = space_make(Type0Desc{size, first.r});
        return out;
    }

    const auto& first = std::get<Type1Desc>(descs.front());
    std::int64_t n = 1;
    for (const auto& d : descs) {
        if (descriptor_type(d) != 1)
            throw std::invalid_argument("sup_product: mixed factor types");
        const auto& d1 = std::get<Type1Desc>(d);
        if (d1.a != first.a || d1.b != first.b)
            throw std::invalid_argument("sup_product: factors disagree on (a, b)");
        n *= d1.n;
        out.parts.push_back(space_make(d));
    }
    out.combined = space_make(Type1Desc{n, first.a, first.b});
    return out;
}

Point SupProduct::pack(const std::vector<Point>& xs) const {
    if (xs.size() != parts.size())
        throw std::invalid_argument("sup_product pack: wrong number of points");
    if (combined.type() == 0) {
        std::int64_t idx = 0;
        for (size_t i = 0; i < parts.size(); ++i)
            idx = idx * parts[i].as0().size + std::get<DiscretePoint>(xs[i]).index;
        return DiscretePoint{idx};
    }
    auto table = slice_table(combined, parts);
    FieldPoint out;
    for (size_t c = 0; c < combined.factors.size(); ++c)
        out.factors.push_back(pack_prime(combined.factors[c], table[c], xs));
    return out;
}

std::vector<Point> SupProduct::unpack(const Point& x) const {
    if (combined.type() == 0) {
        std::int64_t idx = std::get<DiscretePoint>(x).index;
        std::vector<Point> out(parts.size());
        for (size_t i = parts.size(); i-- > 0;) {
            std::int64_t s = parts[i].as0().size;
            out[i] = DiscretePoint{idx % s};
            idx /= s;
        }
        return out;
    }
    const auto& fp = std::get<FieldPoint>(x);
    auto table = slice_table(combined, parts);
    std::vector<Point> out;
    for (const auto& part : parts) {
        FieldPoint p;
        p.factors.resize(part.factors.size());
        out.push_back(std::move(p));
    }
    for (size_t c = 0; c < combined.factors.size(); ++c) {
        const LaurentSeries& src = fp.factors[c];
        for (const auto& pc : table[c].pieces) {
            const FieldSpec& spec = parts[pc.part].factors[pc.part_factor];
            LaurentSeries s;
            s.spec = spec;
            if (src.zero_flag) {
                s = ls_zero(spec);
            } else {
                s.v0 = src.v0;
                s.entire = src.entire;
                bool any = false;
                for (const auto& cv : src.coeffs) {
                    FieldElement piece(cv.begin() + pc.offset,
                                       cv.begin() + pc.offset + pc.width);
                    if (!ff_is_zero(piece)) any = true;
                    s.coeffs.push_back(std::move(piece));
                }
                if (!any && s.entire) s = ls_zero(spec);
            }
            std::get<FieldPoint>(out[pc.part]).factors[pc.part_factor] = std::move(s);
        }
    }
    return out;
}

ExactDistance SupProduct::direct_distance(const std::vector<Point>& xs,
                                          const std::vector<Point>& ys) const {
    if (xs.size() != parts.size() || ys.size() != parts.size())
        throw std::invalid_argument("sup_product: wrong number of points");
    ExactDistance d = ExactDistance::zero();
    for (size_t i = 0; i < parts.size(); ++i)
        d = exact_max(d, distance(parts[i], xs[i], ys[i]));
    return d;
}

EuclideanProduct euclidean_product(const std::vector<Type2Desc>& descs) {
    if (descs.size() < 2)
        throw std::invalid_argument("euclidean_product: need at least 2 factors");
    EuclideanProduct out;
    int n = 0;
    for (const auto& d : descs) {
        validate_descriptor(d);
        if (d.alpha != descs.front().alpha)
            throw std::invalid_argument("euclidean_product: factors disagree on alpha");
        n += d.n;
        out.parts.push_back(d);
    }
    out.combined = Type2Desc{n, descs.front().alpha};
    return out;
}

double EuclideanProduct::metric(const std::vector<double>& x,
                                const std::vector<double>& y) const {
    size_t dim = static_cast<size_t>(combined.n);
    if (x.size() != dim || y.size() != dim)
        throw std::invalid_argument("euclidean_product: wrong dimension");
    double alpha = combined.alpha;
    double acc = 0.0;
    size_t off = 0;
    for (const auto& part : parts) {
        double s = 0.0;
        for (size_t c = 0; c < static_cast<size_t>(part.n); ++c) {
            double t = x[off + c] - y[off + c];
            s += t * t;
        }
        off += static_cast<size_t>(part.n);
        double dk = std::pow(std::sqrt(s), alpha);
        acc += std::pow(dk, 2.0 / alpha);
    }
    return std::pow(acc, alpha / 2.0);
}

namespace {

std::vector<std::vector<double>> probe_pool(int dim, int samples, std::uint64_t seed) {
    std::vector<std::vector<double>> pool;
    for (int i = 0; i < dim; ++i) {
        std::vector<double> e(static_cast<size_t>(dim), 0.0);
        e[static_cast<size_t>(i)] = 1.0;
        pool.push_back(e);
        e[static_cast<size_t>(i)] = -1.0;
        pool.push_back(e);
    }
    // regular unit simplex: e_i / sqrt(2) plus the symmetric apex
    for (int i = 0; i < dim; ++i) {
        std::vector<double> v(static_cast<size_t>(dim), 0.0);
        v[static_cast<size_t>(i)] = 1.0 / std::sqrt(2.0);
        pool.push_back(v);
    }
    double apex = (1.0 + std::sqrt(static_cast<double>(dim + 1))) /
                  (static_cast<double>(dim) * std::sqrt(2.0));
    pool.push_back(std::vector<double>(static_cast<size_t>(dim), apex));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    while (static_cast<int>(pool.size()) < samples) {
        std::vector<double> v(static_cast<size_t>(dim));
        for (auto& c : v) c = unif(rng);
        pool.push_back(std::move(v));
    }
    return pool;
}

} // namespace

ProductProbeReport probe_product_homogeneity(const MetricFn& metric, int dim, int samples,
                                             std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("probe: dim must be >= 1");
    ProductProbeReport rep;
    auto pool = probe_pool(dim, samples, seed);
    const int n = static_cast<int>(pool.size());
    const double tol = 1e-9;

    std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    std::vector<double> vals;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = metric(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
            dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
            dist[static_cast<size_t>(j)][static_cast<size_t>(i)] = d;
            if (d > 0) vals.push_back(d);
        }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end(),
                           [&](double u, double v) { return std::fabs(u - v) <= tol * v; }),
               vals.end());

    for (double r : vals) {
        std::vector<std::vector<char>> adj(static_cast<size_t>(n),
                                           std::vector<char>(static_cast<size_t>(n), 0));
        int degmax = 0;
        for (int i = 0; i < n; ++i) {
            int deg = 0;
            for (int j = 0; j < n; ++j)
                if (j != i &&
                    std::fabs(dist[static_cast<size_t>(i)][static_cast<size_t>(j)] - r) <=
                        tol * r) {
                    adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
                    ++deg;
                }
            degmax = std::max(degmax, deg);
        }
        if (degmax + 1 <= rep.max_equidistant_clique_size) continue;
        auto cl = max_clique(adj);
        if (static_cast<int>(cl.size()) > rep.max_equidistant_clique_size) {
            rep.max_equidistant_clique_size = static_cast<int>(cl.size());
            rep.clique_points.clear();
            for (int v : cl) rep.clique_points.push_back(pool[static_cast<size_t>(v)]);
        }
    }

    // similarity witnesses: u(x) = a + s * Q (x - a) with Q the reflection
    // taking the unit direction of b - a to that of c - a, s the Euclidean
    // ratio. The witness exists exactly when the metric is invariant under
    // Euclidean similarities.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto sub = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> v(x.size());
        for (size_t c = 0; c < x.size(); ++c) v[c] = x[c] - y[c];
        return v;
    };
    auto norm = [](const std::vector<double>& x) {
        double s = 0;
        for (double c : x) s += c * c;
        return std::sqrt(s);
    };
    const int triples = 60;
    for (int t = 0; t < triples; ++t) {
        int ia = pick(rng), ib = pick(rng), ic = pick(rng);
        if (ia == ib || ia == ic) continue;
        const auto& A = pool[static_cast<size_t>(ia)];
        const auto& B = pool[static_cast<size_t>(ib)];
        const auto& C = pool[static_cast<size_t>(ic)];
        auto ab = sub(B, A), ac = sub(C, A);
        double nab = norm(ab), nac = norm(ac);
        if (nab < 1e-12 || nac < 1e-12) continue;
        double s = nac / nab;
        std::vector<double> w1(ab), w2(ac);
        for (auto& c : w1) c /= nab;
        for (auto& c : w2) c /= nac;
        auto v = sub(w1, w2);
        double nv = norm(v);
        auto apply = [&](const std::vector<double>& x) {
            auto d = sub(x, A);
            if (nv > 1e-12) {
                double dot = 0;
                for (size_t c = 0; c < d.size(); ++c) dot += d[c] * v[c] / nv;
                for (size_t c = 0; c < d.size(); ++c) d[c] -= 2.0 * dot * v[c] / nv;
            }
            std::vector<double> y(A);
            for (size_t c = 0; c < d.size(); ++c) y[c] += s * d[c];
            return y;
        };
        double lambda = metric(A, C) / metric(A, B);
        bool violated = false;
        for (int pr = 0; pr < 20 && !violated; ++pr) {
            std::vector<double> x(static_cast<size_t>(dim)), y(static_cast<size_t>(dim));
            for (auto& c : x) c = unif(rng);
            for (auto& c : y) c = unif(rng);
            double d0 = metric(x, y);
            if (d0 < 1e-9) continue;
            double d1 = metric(apply(x), apply(y));
            if (std::fabs(d1 - lambda * d0) > 1e-6 * std::max(1.0, lambda * d0))
                violated = true;
        }
        ++rep.triples_checked;
        if (violated) ++rep.homogeneity_violations;
    }
    return rep;
}

} // namespace dilhom
