#include "dilhom/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace dilhom {

namespace {

constexpr std::int64_t kMaxOrder = std::int64_t{1} << 20;

int mod_inv(std::int64_t a, std::int64_t p) {
    // Fermat; p is a small prime.
    std::int64_t r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

// Polynomials over F_p, coefficients low to high.
using Poly = std::vector<int>;

int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

Poly poly_trim(Poly f) {
    f.resize(static_cast<size_t>(poly_deg(f) + 1));
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, std::int64_t p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + std::int64_t{f[i]} * g[j]) % p);
    return poly_trim(std::move(r));
}

// f mod g, g monic.
Poly poly_mod(Poly f, const Poly& g, std::int64_t p) {
    int dg = poly_deg(g);
    for (int df = poly_deg(f); df >= dg; df = poly_deg(f)) {
        std::int64_t c = f[static_cast<size_t>(df)];
        for (int i = 0; i <= dg; ++i) {
            auto& fi = f[static_cast<size_t>(df - dg + i)];
            fi = static_cast<int>(((fi - c * g[static_cast<size_t>(i)]) % p + p) % p);
        }
    }
    return poly_trim(std::move(f));
}

// Extended Euclid on polynomials over F_p: returns (gcd, s) with
// gcd = s*a + t*b for some t; gcd is made monic.
std::pair<Poly, Poly> poly_half_xgcd(Poly a, Poly b, std::int64_t p) {
    Poly s0{1}, s1{};
    while (poly_deg(b) >= 0) {
        // divide a by b (b need not be monic here)
        int db = poly_deg(b);
        std::int64_t lead_inv = mod_inv(b[static_cast<size_t>(db)], p);
        Poly q;
        Poly r = a;
        for (int dr = poly_deg(r); dr >= db; dr = poly_deg(r)) {
            std::int64_t c = r[static_cast<size_t>(dr)] * lead_inv % p;
            if (static_cast<int>(q.size()) < dr - db + 1) q.resize(static_cast<size_t>(dr - db + 1), 0);
            q[static_cast<size_t>(dr - db)] = static_cast<int>(c);
            for (int i = 0; i <= db; ++i) {
                auto& ri = r[static_cast<size_t>(dr - db + i)];
                ri = static_cast<int>(((ri - c * b[static_cast<size_t>(i)]) % p + p) % p);
            }
        }
        r = poly_trim(std::move(r));
        // (a, b) <- (b, r); (s0, s1) <- (s1, s0 - q*s1)
        Poly qs = poly_mul(q, s1, p);
        Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i)
            s2[i] = static_cast<int>(((s2[i] - qs[i]) % p + p) % p);
        s2 = poly_trim(std::move(s2));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    int da = poly_deg(a);
    if (da >= 0) {
        std::int64_t inv = mod_inv(a[static_cast<size_t>(da)], p);
        for (auto& c : a) c = static_cast<int>(c * inv % p);
        for (auto& c : s0) c = static_cast<int>(c * inv % p);
    }
    return {std::move(a), std::move(s0)};
}

bool poly_is_irreducible(const Poly& f, std::int64_t p) {
    int k = poly_deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    // trial division by every monic polynomial of degree 1..k/2
    for (int d = 1; 2 * d <= k; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            Poly g(static_cast<size_t>(d + 1), 0);
            std::int64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[static_cast<size_t>(i)] = static_cast<int>(t % p);
                t /= p;
            }
            g[static_cast<size_t>(d)] = 1;
            if (poly_deg(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t FieldSpec::order() const {
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    return q;
}

FieldSpec field_make(std::int64_t p, int k) {
    if (!is_prime(p)) throw std::invalid_argument("field_make: p is not prime");
    if (k < 1) throw std::invalid_argument("field_make: k must be >= 1");
    FieldSpec spec;
    spec.p = p;
    spec.k = k;
    if (spec.order() > kMaxOrder) throw std::invalid_argument("field_make: p^k exceeds 2^20");
    if (k == 1) {
        spec.modulus = {0, 1}; // t: arithmetic is plain mod p
        return spec;
    }
    // lexicographically least monic irreducible of degree k, scanning
    // constant-first digit order (c_0 least significant)
    std::int64_t count = spec.order();
    for (std::int64_t idx = 0; idx < count; ++idx) {
        Poly f(static_cast<size_t>(k + 1), 0);
        std::int64_t t = idx;
        for (int i = k - 1; i >= 0; --i) {
            f[static_cast<size_t>(i)] = static_cast<int>(t % p);
            t /= p;
        }
        f[static_cast<size_t>(k)] = 1;
        if (poly_is_irreducible(f, p)) {
            spec.modulus = std::move(f);
            return spec;
        }
    }
    throw std::logic_error("field_make: no irreducible polynomial found"); // unreachable
}

FieldElement ff_zero(const FieldSpec& spec) { return FieldElement(static_cast<size_t>(spec.k), 0); }

FieldElement ff_one(const FieldSpec& spec) {
    auto e = ff_zero(spec);
    e[0] = 1;
    return e;
}

bool ff_is_zero(const FieldElement& x) {
    return std::all_of(x.begin(), x.end(), [](int c) { return c == 0; });
}

static void check_elem(const FieldSpec& spec, const FieldElement& x) {
    if (static_cast<int>(x.size()) != spec.k) throw std::invalid_argument("field element has wrong length");
    for (int c : x)
        if (c < 0 || c >= spec.p) throw std::invalid_argument("field element residue out of range");
}

FieldElement ff_add(const FieldSpec& spec, const FieldElement& x, const FieldElement& y) {
    check_elem(spec, x);
    check_elem(spec, y);
    FieldElement r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = static_cast<int>((x[i] + y[i]) % spec.p);
    return r;
}

FieldElement ff_neg(const FieldSpec& spec, const FieldElement& x) {
    check_elem(spec, x);
    FieldElement r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = static_cast<int>((spec.p - x[i]) % spec.p);
    return r;
}

FieldElement ff_sub(const FieldSpec& spec, const FieldElement& x, const FieldElement& y) {
    return ff_add(spec, x, ff_neg(spec, y));
}

FieldElement ff_mul(const FieldSpec& spec, const FieldElement& x, const FieldElement& y) {
    check_elem(spec, x);
    check_elem(spec, y);
    Poly prod = poly_mul(x, y, spec.p);
    prod = poly_mod(std::move(prod), spec.modulus, spec.p);
    prod.resize(static_cast<size_t>(spec.k), 0);
    return prod;
}

FieldElement ff_inv(const FieldSpec& spec, const FieldElement& x) {
    check_elem(spec, x);
    if (ff_is_zero(x)) throw division_by_zero("ff_inv: zero has no inverse");
    auto [g, s] = poly_half_xgcd(poly_trim(x), spec.modulus, spec.p);
    if (poly_deg(g) != 0) throw std::logic_error("ff_inv: modulus not irreducible");
    s = poly_mod(std::move(s), spec.modulus, spec.p);
    s.resize(static_cast<size_t>(spec.k), 0);
    return s;
}

std::int64_t ff_index(const FieldSpec& spec, const FieldElement& x) {
    check_elem(spec, x);
    std::int64_t idx = 0;
    for (int i = spec.k - 1; i >= 0; --i) idx = idx * spec.p + x[static_cast<size_t>(i)];
    return idx;
}

FieldElement ff_unindex(const FieldSpec& spec, std::int64_t index) {
    if (index < 0 || index >= spec.order()) throw std::invalid_argument("ff_unindex: index out of range");
    FieldElement x(static_cast<size_t>(spec.k));
    for (int i = 0; i < spec.k; ++i) {
        x[static_cast<size_t>(i)] = static_cast<int>(index % spec.p);
        index /= spec.p;
    }
    return x;
}

} // namespace dilhom
