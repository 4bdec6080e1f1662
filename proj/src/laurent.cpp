#include "dilhom/laurent.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace dilhom {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Exponent below which every coefficient is zero.
std::int64_t lo_of(const LaurentSeries& s) { return s.v0; }

// First exponent whose coefficient is unknown; kInf for entire series.
std::int64_t horizon_of(const LaurentSeries& s) {
    if (s.zero_flag || s.entire) return kInf;
    return s.v0 + s.prec();
}

void check_same_field(const LaurentSeries& s, const LaurentSeries& t) {
    if (!(s.spec == t.spec)) throw std::invalid_argument("laurent: mismatched field specs");
}

bool window_all_zero(const LaurentSeries& s) {
    return std::all_of(s.coeffs.begin(), s.coeffs.end(), [](const FieldElement& c) { return ff_is_zero(c); });
}

// Collapse an entire all-zero series to the canonical zero.
LaurentSeries canonicalize(LaurentSeries s) {
    if (!s.zero_flag && s.entire && window_all_zero(s)) {
        LaurentSeries z;
        z.spec = s.spec;
        z.zero_flag = true;
        z.v0 = 0;
        z.coeffs = {ff_zero(s.spec)};
        z.entire = true;
        return z;
    }
    return s;
}

} // namespace

FieldElement LaurentSeries::coeff_at(std::int64_t exponent) const {
    if (zero_flag) return ff_zero(spec);
    if (exponent < v0) return ff_zero(spec);
    if (exponent < v0 + prec()) return coeffs[static_cast<size_t>(exponent - v0)];
    if (entire) return ff_zero(spec);
    throw precision_exhausted("laurent: coefficient beyond stored window");
}

LaurentSeries ls_zero(const FieldSpec& spec) {
    LaurentSeries z;
    z.spec = spec;
    z.zero_flag = true;
    z.v0 = 0;
    z.coeffs = {ff_zero(spec)};
    return z;
}

LaurentSeries ls_monomial(const FieldSpec& spec, const FieldElement& c, std::int64_t e,
                          std::int64_t prec) {
    if (prec < 1) throw std::invalid_argument("ls_monomial: prec must be >= 1");
    LaurentSeries s;
    s.spec = spec;
    s.v0 = e;
    s.coeffs.assign(static_cast<size_t>(prec), ff_zero(spec));
    s.coeffs[0] = c;
    return canonicalize(std::move(s));
}

LaurentSeries ls_constant(const FieldSpec& spec, const FieldElement& c, std::int64_t prec) {
    return ls_monomial(spec, c, 0, prec);
}

std::optional<Valuation> ls_try_valuation(const LaurentSeries& s) {
    if (s.zero_flag) return Valuation::inf();
    for (std::int64_t i = 0; i < s.prec(); ++i)
        if (!ff_is_zero(s.coeffs[static_cast<size_t>(i)])) return Valuation::of(s.v0 + i);
    if (s.entire) return Valuation::inf();
    return std::nullopt;
}

Valuation ls_valuation(const LaurentSeries& s) {
    if (s.prec() < 1) throw std::invalid_argument("ls_valuation: empty window");
    auto v = ls_try_valuation(s);
    if (!v) throw precision_exhausted("ls_valuation: window is all zero at current precision");
    return *v;
}

bool ls_known_equal(const LaurentSeries& s, const LaurentSeries& t) {
    auto v = ls_try_valuation(ls_sub(s, t));
    if (!v) throw precision_exhausted("ls_known_equal: difference unresolved at current precision");
    return v->infinite;
}

LaurentSeries ls_add(const LaurentSeries& s, const LaurentSeries& t) {
    check_same_field(s, t);
    if (s.zero_flag) return t;
    if (t.zero_flag) return s;
    std::int64_t lo = std::min(lo_of(s), lo_of(t));
    std::int64_t hi = std::min(horizon_of(s), horizon_of(t));
    if (hi >= kInf) hi = std::max(s.v0 + s.prec(), t.v0 + t.prec()); // both entire
    LaurentSeries r;
    r.spec = s.spec;
    r.v0 = lo;
    r.entire = s.entire && t.entire;
    r.coeffs.reserve(static_cast<size_t>(hi - lo));
    for (std::int64_t e = lo; e < hi; ++e)
        r.coeffs.push_back(ff_add(s.spec, s.coeff_at(e), t.coeff_at(e)));
    return canonicalize(std::move(r));
}

LaurentSeries ls_neg(const LaurentSeries& s) {
    if (s.zero_flag) return s;
    LaurentSeries r = s;
    for (auto& c : r.coeffs) c = ff_neg(s.spec, c);
    return r;
}

LaurentSeries ls_sub(const LaurentSeries& s, const LaurentSeries& t) { return ls_add(s, ls_neg(t)); }

LaurentSeries ls_mul(const LaurentSeries& s, const LaurentSeries& t) {
    check_same_field(s, t);
    if (s.zero_flag || t.zero_flag) return ls_zero(s.spec);
    std::int64_t lo = s.v0 + t.v0;
    std::int64_t hi;
    if (s.entire && t.entire) {
        hi = (s.v0 + s.prec()) + (t.v0 + t.prec()) - 1;
    } else {
        // coefficient at e needs s below e - t.v0 and t below e - s.v0
        hi = std::min(horizon_of(s) + t.v0, horizon_of(t) + s.v0);
    }
    if (hi < lo + 1) hi = lo + 1; // never emit an empty window
    LaurentSeries r;
    r.spec = s.spec;
    r.v0 = lo;
    r.entire = s.entire && t.entire;
    r.coeffs.assign(static_cast<size_t>(hi - lo), ff_zero(s.spec));
    for (std::int64_t i = 0; i < s.prec(); ++i) {
        if (ff_is_zero(s.coeffs[static_cast<size_t>(i)])) continue;
        for (std::int64_t j = 0; j < t.prec(); ++j) {
            std::int64_t e = (s.v0 + i) + (t.v0 + j);
            if (e >= hi) break;
            auto term = ff_mul(s.spec, s.coeffs[static_cast<size_t>(i)], t.coeffs[static_cast<size_t>(j)]);
            auto& slot = r.coeffs[static_cast<size_t>(e - lo)];
            slot = ff_add(s.spec, slot, term);
        }
    }
    return canonicalize(std::move(r));
}

LaurentSeries ls_normalize(const LaurentSeries& s) {
    if (s.zero_flag) return s;
    Valuation v = ls_valuation(s);
    if (v.infinite) return ls_zero(s.spec);
    LaurentSeries r;
    r.spec = s.spec;
    r.v0 = v.value;
    r.entire = s.entire;
    r.coeffs.assign(s.coeffs.begin() + static_cast<std::ptrdiff_t>(v.value - s.v0), s.coeffs.end());
    return r;
}

LaurentSeries ls_inv(const LaurentSeries& s, std::int64_t prec) {
    if (prec < 1) throw std::invalid_argument("ls_inv: prec must be >= 1");
    if (s.zero_flag) throw division_by_zero("ls_inv: zero series");
    LaurentSeries n = ls_normalize(s);
    std::int64_t avail = n.entire ? prec : n.prec();
    std::int64_t out = std::min(prec, avail);
    // u = inverse of sum a_j X^{v+j}; u_m solves the triangular system
    // a_0 u_m + a_1 u_{m-1} + ... + a_m u_0 = [m == 0].
    FieldElement a0inv = ff_inv(n.spec, n.coeffs[0]);
    std::vector<FieldElement> u(static_cast<size_t>(out), ff_zero(n.spec));
    u[0] = a0inv;
    for (std::int64_t m = 1; m < out; ++m) {
        FieldElement acc = ff_zero(n.spec);
        for (std::int64_t j = 1; j <= m; ++j) {
            FieldElement aj = j < n.prec() ? n.coeffs[static_cast<size_t>(j)] : ff_zero(n.spec);
            if (ff_is_zero(aj)) continue;
            acc = ff_add(n.spec, acc, ff_mul(n.spec, aj, u[static_cast<size_t>(m - j)]));
        }
        u[static_cast<size_t>(m)] = ff_neg(n.spec, ff_mul(n.spec, a0inv, acc));
    }
    LaurentSeries r;
    r.spec = n.spec;
    r.v0 = -n.v0;
    r.coeffs = std::move(u);
    // the inverse of a pure monomial is again a monomial, hence exact
    bool monomial = n.entire && std::all_of(n.coeffs.begin() + 1, n.coeffs.end(),
                                            [](const FieldElement& c) { return ff_is_zero(c); });
    r.entire = monomial;
    return r;
}

LaurentSeries ls_random(const FieldSpec& spec, std::int64_t val_lo, std::int64_t val_hi,
                        std::int64_t prec, std::uint64_t seed) {
    if (val_lo > val_hi) throw std::invalid_argument("ls_random: empty valuation range");
    if (prec < 1) throw std::invalid_argument("ls_random: prec must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> vdist(val_lo, val_hi);
    std::uniform_int_distribution<std::int64_t> cdist(0, spec.order() - 1);
    std::uniform_int_distribution<std::int64_t> nzdist(1, spec.order() - 1);
    LaurentSeries r;
    r.spec = spec;
    r.v0 = vdist(rng);
    r.coeffs.reserve(static_cast<size_t>(prec));
    r.coeffs.push_back(ff_unindex(spec, nzdist(rng)));
    for (std::int64_t i = 1; i < prec; ++i) r.coeffs.push_back(ff_unindex(spec, cdist(rng)));
    return r;
}

} // namespace dilhom
