#include "dilhom/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dilhom {

namespace {

constexpr std::int64_t kInvPrec = 48;

std::int64_t geo_k(const ExactDistance& d) {
    if (d.kind != ExactDistance::Kind::Geo)
        throw std::invalid_argument("expected an exact Geo distance");
    return d.k;
}

const FieldPoint& as_field(const Point& x) {
    const auto* p = std::get_if<FieldPoint>(&x);
    if (!p) throw std::invalid_argument("expected a field point");
    return *p;
}

const RealPoint& as_real(const Point& x) {
    const auto* p = std::get_if<RealPoint>(&x);
    if (!p) throw std::invalid_argument("expected a coordinate point");
    return *p;
}

FieldPoint affine_apply(const Space& space, const Type1Affine& u, const FieldPoint& x) {
    FieldPoint y;
    for (size_t s = 0; s < space.factors.size(); ++s)
        y.factors.push_back(ls_add(ls_mul(u.units[s], x.factors[s]), u.shift.factors[s]));
    return y;
}

Type1Affine affine_inverse(const Space& space, const Type1Affine& u) {
    Type1Affine inv;
    for (size_t s = 0; s < space.factors.size(); ++s) {
        LaurentSeries unit_inv = ls_inv(u.units[s], kInvPrec);
        inv.shift.factors.push_back(ls_neg(ls_mul(unit_inv, u.shift.factors[s])));
        inv.units.push_back(std::move(unit_inv));
    }
    return inv;
}

std::vector<double> matvec(const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
    std::vector<double> r(m.size(), 0.0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

std::vector<std::vector<double>> matmul(const std::vector<std::vector<double>>& a,
                                        const std::vector<std::vector<double>>& b) {
    size_t n = a.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::vector<std::vector<double>> identity_matrix(int n) {
    std::vector<std::vector<double>> m(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return m;
}

/// Single Householder reflection taking unit vector u to unit vector v.
std::vector<std::vector<double>> householder_from_to(const std::vector<double>& u,
                                                     const std::vector<double>& v) {
    size_t n = u.size();
    std::vector<double> w(n);
    double wn = 0;
    for (size_t i = 0; i < n; ++i) {
        w[i] = u[i] - v[i];
        wn += w[i] * w[i];
    }
    auto Q = identity_matrix(static_cast<int>(n));
    if (wn < 1e-24) return Q;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Q[i][j] -= 2.0 * w[i] * w[j] / wn;
    return Q;
}

double euclid(const RealPoint& x, const RealPoint& y) {
    double s = 0;
    for (size_t i = 0; i < x.coords.size(); ++i) {
        double t = x.coords[i] - y.coords[i];
        s += t * t;
    }
    return std::sqrt(s);
}

// Monomial point delta * X^e with the packed digit unpacked across factors.
FieldPoint packed_monomial(const Space& space, std::int64_t packed, std::int64_t e) {
    FieldPoint fp;
    for (const auto& f : space.factors) {
        std::int64_t q = f.order();
        fp.factors.push_back(ls_monomial(f, ff_unindex(f, packed % q), e));
        packed /= q;
    }
    return fp;
}

std::int64_t pack_coeffs(const Space& space, const FieldPoint& x, std::int64_t e) {
    std::int64_t packed = 0, radix = 1;
    for (size_t s = 0; s < space.factors.size(); ++s) {
        packed += ff_index(space.factors[s], x.factors[s].coeff_at(e)) * radix;
        radix *= space.factors[s].order();
    }
    return packed;
}

std::int64_t pack_neg(const Space& space, std::int64_t packed) {
    std::int64_t out = 0, radix = 1;
    for (const auto& f : space.factors) {
        std::int64_t q = f.order();
        out += ff_index(f, ff_neg(f, ff_unindex(f, packed % q))) * radix;
        packed /= q;
        radix *= q;
    }
    return out;
}

} // namespace

double ExactScale::value() const { return geo ? std::pow(b, static_cast<double>(k)) : c; }

DilationMap dil_identity(const Space& space) {
    switch (space.type()) {
        case 1: {
            Type1Affine id;
            for (const auto& f : space.factors) {
                id.units.push_back(ls_constant(f, ff_one(f)));
                id.shift.factors.push_back(ls_zero(f));
            }
            return id;
        }
        case 2: {
            int n = space.as2().n;
            return Type2Similarity{1.0, identity_matrix(n), std::vector<double>(static_cast<size_t>(n), 0.0)};
        }
        default:
            throw std::invalid_argument("dil_identity: type 0 spaces carry no dilation representation here");
    }
}

Point dil_apply(const Space& space, const DilationMap& u, const Point& x) {
    if (const auto* aff = std::get_if<Type1Affine>(&u)) return affine_apply(space, *aff, as_field(x));
    if (const auto* comp = std::get_if<Type1Composite>(&u)) {
        const auto& fx = as_field(x);
        for (const auto& [src, tgt] : comp->mapping) {
            bool eq = true;
            for (size_t s = 0; s < src.factors.size() && eq; ++s)
                if (!ls_known_equal(src.factors[s], fx.factors[s])) eq = false;
            if (eq) return tgt;
        }
        throw domain_error("dil_apply: point outside the recorded domain of the composite map");
    }
    const auto& sim = std::get<Type2Similarity>(u);
    const auto& rx = as_real(x);
    auto y = matvec(sim.orthogonal, rx.coords);
    for (size_t i = 0; i < y.size(); ++i) y[i] = sim.scale * y[i] + sim.translation[i];
    return RealPoint{std::move(y)};
}

ExactScale scale_of(const Space& space, const DilationMap& u) {
    if (const auto* aff = std::get_if<Type1Affine>(&u)) {
        bool have = false;
        std::int64_t m = 0;
        for (const auto& unit : aff->units) {
            Valuation v = ls_valuation(unit);
            if (v.infinite) throw std::invalid_argument("scale_of: affine unit is zero, not a dilation");
            if (!have) {
                m = v.value;
                have = true;
            } else if (v.value != m) {
                throw std::invalid_argument("scale_of: inconsistent unit valuations, not a dilation");
            }
        }
        return ExactScale::geo_scale(space.as1().b, -m);
    }
    if (const auto* comp = std::get_if<Type1Composite>(&u))
        return ExactScale::geo_scale(space.as1().b, comp->scale_exponent);
    const auto& sim = std::get<Type2Similarity>(u);
    return ExactScale::real_scale(std::pow(sim.scale, space.as2().alpha));
}

DilationMap dil_compose(const Space& space, const DilationMap& u, const DilationMap& v) {
    if (space.type() == 2) {
        const auto& su = std::get<Type2Similarity>(u);
        const auto& sv = std::get<Type2Similarity>(v);
        Type2Similarity w;
        w.scale = su.scale * sv.scale;
        w.orthogonal = matmul(su.orthogonal, sv.orthogonal);
        auto t = matvec(su.orthogonal, sv.translation);
        w.translation.resize(t.size());
        for (size_t i = 0; i < t.size(); ++i) w.translation[i] = su.scale * t[i] + su.translation[i];
        return w;
    }
    if (space.type() != 1) throw std::invalid_argument("dil_compose: unsupported space type");

    const auto* au = std::get_if<Type1Affine>(&u);
    const auto* av = std::get_if<Type1Affine>(&v);
    if (au && av) {
        Type1Affine w;
        for (size_t s = 0; s < space.factors.size(); ++s) {
            w.units.push_back(ls_mul(au->units[s], av->units[s]));
            w.shift.factors.push_back(
                ls_add(ls_mul(au->units[s], av->shift.factors[s]), au->shift.factors[s]));
        }
        return w;
    }
    std::int64_t ku = scale_of(space, u).k, kv = scale_of(space, v).k;
    Type1Composite w;
    w.scale_exponent = ku + kv;
    if (const auto* cv = std::get_if<Type1Composite>(&v)) {
        for (const auto& [src, tgt] : cv->mapping)
            w.mapping.emplace_back(src, as_field(dil_apply(space, u, tgt)));
    } else {
        // v affine, u composite: domain of w is v^-1(dom u)
        Type1Affine vinv = affine_inverse(space, *av);
        const auto& cu = std::get<Type1Composite>(u);
        for (const auto& [src, tgt] : cu.mapping)
            w.mapping.emplace_back(affine_apply(space, vinv, src), tgt);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Extension engine.
// ---------------------------------------------------------------------------

Type1Composite extend_partial(const Space& space, const std::vector<Point>& sample,
                              const PartialMap& partial) {
    if (space.type() != 1) throw std::invalid_argument("extend_partial: type 1 space required");
    if (partial.pairs.empty()) throw std::invalid_argument("extend_partial: empty partial map");

    std::vector<std::pair<FieldPoint, FieldPoint>> mapped;
    for (const auto& [src, tgt] : partial.pairs) mapped.emplace_back(as_field(src), as_field(tgt));

    // scale consistency across every domain pair, exactly
    std::int64_t k = 0;
    bool have_k = false;
    for (size_t i = 0; i < mapped.size(); ++i)
        for (size_t j = i + 1; j < mapped.size(); ++j) {
            auto ds = distance(space, mapped[i].first, mapped[j].first);
            auto dt = distance(space, mapped[i].second, mapped[j].second);
            if (ds.is_zero())
                throw std::invalid_argument("extend_partial: duplicated source at pairs " +
                                            std::to_string(i) + "," + std::to_string(j));
            if (dt.is_zero())
                throw std::invalid_argument("extend_partial: partial map is not injective at pairs " +
                                            std::to_string(i) + "," + std::to_string(j));
            std::int64_t kk = geo_k(dt) - geo_k(ds);
            if (!have_k) {
                k = kk;
                have_k = true;
            } else if (kk != k) {
                throw std::invalid_argument(
                    "extend_partial: partial map is not a dilation; scale mismatch at pairs " +
                    std::to_string(i) + "," + std::to_string(j));
            }
        }

    const std::int64_t n = space.as1().n;
    for (const auto& pt : sample) {
        const auto& x = as_field(pt);
        bool known = false;
        for (const auto& [src, tgt] : mapped)
            if (distance(space, src, x).is_zero()) {
                known = true;
                break;
            }
        if (known) continue;

        // required valuations of y - target_j, from the source side
        std::vector<std::int64_t> want; // v_j
        for (const auto& [src, tgt] : mapped) want.push_back(-(geo_k(distance(space, src, x)) + k));

        size_t jstar = 0;
        for (size_t j = 1; j < want.size(); ++j)
            if (want[j] > want[jstar]) jstar = j;
        std::int64_t vstar = want[jstar];

        // pick the least branch digit consistent with every anchor sharing
        // the deepest constraint level
        std::vector<std::int64_t> forbidden{0};
        for (size_t j = 0; j < mapped.size(); ++j) {
            if (j == jstar || want[j] != vstar) continue;
            auto sep = fp_sub(space, mapped[jstar].second, mapped[j].second);
            std::int64_t vs = 0;
            bool have_vs = false;
            for (const auto& c : sep.factors) {
                Valuation vv = ls_valuation(c);
                if (vv.infinite) continue;
                if (!have_vs || vv.value < vs) {
                    vs = vv.value;
                    have_vs = true;
                }
            }
            if (have_vs && vs == vstar)
                forbidden.push_back(pack_neg(space, pack_coeffs(space, sep, vstar)));
        }
        std::int64_t delta = -1;
        for (std::int64_t cand = 1; cand < n; ++cand)
            if (std::find(forbidden.begin(), forbidden.end(), cand) == forbidden.end()) {
                delta = cand;
                break;
            }
        if (delta < 0)
            throw invariant_violation("extend_partial: no consistent branch digit available");

        FieldPoint y = fp_add(space, mapped[jstar].second, packed_monomial(space, delta, vstar));

        for (size_t j = 0; j < mapped.size(); ++j) {
            auto dy = distance(space, y, mapped[j].second);
            if (dy.is_zero() || geo_k(dy) != -want[j])
                throw invariant_violation("extend_partial: greedy placement violated anchor " +
                                          std::to_string(j));
        }
        mapped.emplace_back(x, std::move(y));
    }

    // full pair guard over the whole sample
    for (size_t i = 0; i < mapped.size(); ++i)
        for (size_t j = i + 1; j < mapped.size(); ++j) {
            auto ds = distance(space, mapped[i].first, mapped[j].first);
            auto dt = distance(space, mapped[i].second, mapped[j].second);
            if (ds.is_zero() || dt.is_zero() || geo_k(dt) != geo_k(ds) + k)
                throw invariant_violation("extend_partial: extension violates pair " + std::to_string(i) +
                                          "," + std::to_string(j));
        }

    Type1Composite out;
    out.scale_exponent = k;
    out.mapping = std::move(mapped);
    return out;
}

// ---------------------------------------------------------------------------
// Two-point witnesses.
// ---------------------------------------------------------------------------

DilationMap two_point_witness(const Space& space, const Point& a, const Point& b, const Point& c,
                              const std::vector<Point>& support) {
    if (point_known_equal(space, a, b) || point_known_equal(space, a, c) ||
        point_known_equal(space, b, c))
        throw std::invalid_argument("two_point_witness: points must be pairwise distinct");

    if (space.type() == 2) {
        const auto& ra = as_real(a);
        const auto& rb = as_real(b);
        const auto& rc = as_real(c);
        double dab = euclid(ra, rb), dac = euclid(ra, rc);
        double s = dac / dab;
        size_t n = ra.coords.size();
        std::vector<double> u(n), v(n);
        for (size_t i = 0; i < n; ++i) {
            u[i] = (rb.coords[i] - ra.coords[i]) / dab;
            v[i] = (rc.coords[i] - ra.coords[i]) / dac;
        }
        Type2Similarity sim;
        sim.scale = s;
        sim.orthogonal = householder_from_to(u, v);
        auto qa = matvec(sim.orthogonal, ra.coords);
        sim.translation.resize(n);
        for (size_t i = 0; i < n; ++i) sim.translation[i] = ra.coords[i] - s * qa[i];
        return sim;
    }
    if (space.type() != 1)
        throw std::invalid_argument("two_point_witness: type 0 spaces are not supported");

    const auto& fa = as_field(a);
    const auto& fb = as_field(b);
    const auto& fc = as_field(c);

    // single factor with an exactly invertible b - a (a monomial): affine
    // lambda = (c - a) / (b - a), shift = a - lambda * a. When the inverse
    // would be truncated the map could not certify u(a) = a exactly, so
    // those cases fall through to the extension engine below.
    if (space.factors.size() == 1) {
        LaurentSeries diff = ls_normalize(ls_sub(fb.factors[0], fa.factors[0]));
        int nonzero = 0;
        for (const auto& cv : diff.coeffs)
            if (!ff_is_zero(cv)) ++nonzero;
        if (diff.entire && nonzero == 1) {
            LaurentSeries lambda =
                ls_mul(ls_sub(fc.factors[0], fa.factors[0]), ls_inv(diff, kInvPrec));
            Type1Affine aff;
            aff.shift.factors.push_back(ls_sub(fa.factors[0], ls_mul(lambda, fa.factors[0])));
            aff.units.push_back(std::move(lambda));
            return aff;
        }
    }

    // multi-factor: monomial rescale to equalize the two distances, then an
    // extension-engine isometry on the rescaled points
    std::int64_t kab = geo_k(distance(space, fa, fb));
    std::int64_t kac = geo_k(distance(space, fa, fc));
    std::int64_t m = kab - kac; // unit valuation: distances multiply by b^{-m}

    Type1Affine mono;
    for (const auto& f : space.factors) mono.units.push_back(ls_monomial(f, ff_one(f), m));
    for (size_t s = 0; s < space.factors.size(); ++s)
        mono.shift.factors.push_back(
            ls_sub(fa.factors[s], ls_mul(mono.units[s], fa.factors[s])));

    FieldPoint b_scaled = affine_apply(space, mono, fb);

    std::vector<Point> domain{Point{fa}, Point{b_scaled}};
    for (const auto& p : support) {
        FieldPoint img = affine_apply(space, mono, as_field(p));
        bool dup = false;
        for (const auto& q : domain)
            if (point_known_equal(space, q, img)) {
                dup = true;
                break;
            }
        if (!dup) domain.push_back(img);
    }
    PartialMap partial;
    partial.pairs.emplace_back(Point{fa}, Point{fa});
    if (!point_known_equal(space, b_scaled, fc)) partial.pairs.emplace_back(Point{b_scaled}, Point{fc});
    Type1Composite iso = extend_partial(space, domain, partial);

    // overall map x -> iso(mono(x)); record it over {a, b} + support
    Type1Composite out;
    out.scale_exponent = kac - kab;
    std::vector<Point> sources{a, b};
    for (const auto& p : support) sources.push_back(p);
    for (const auto& p : sources) {
        const auto& fp = as_field(p);
        bool dup = false;
        for (const auto& [src, tgt] : out.mapping)
            if (distance(space, src, fp).is_zero()) {
                dup = true;
                break;
            }
        if (dup) continue;
        Point img = dil_apply(space, iso, affine_apply(space, mono, fp));
        out.mapping.emplace_back(fp, as_field(img));
    }
    return out;
}

} // namespace dilhom
