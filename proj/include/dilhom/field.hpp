#pragma once

#include <cstdint>
#include <vector>

#include "dilhom/errors.hpp"

namespace dilhom {

/// An element of F_{p^k} in coordinates w.r.t. the basis 1, t, ..., t^{k-1}.
/// Every entry lies in [0, p).
using FieldElement = std::vector<int>;

/// Description of a finite field F_{p^k}: the prime p, the extension degree k
/// and a monic irreducible modulus polynomial of degree k over F_p
/// (coefficients low to high, modulus.size() == k + 1, modulus.back() == 1).
///
/// field_make always picks the lexicographically least irreducible modulus,
/// so specs built from the same (p, k) compare equal across runs.
struct FieldSpec {
    std::int64_t p = 0;
    int k = 0;
    std::vector<int> modulus;

    std::int64_t order() const; // p^k
    bool operator==(const FieldSpec&) const = default;
};

FieldSpec field_make(std::int64_t p, int k);

bool is_prime(std::int64_t n);

FieldElement ff_zero(const FieldSpec& spec);
FieldElement ff_one(const FieldSpec& spec);
bool ff_is_zero(const FieldElement& x);

FieldElement ff_add(const FieldSpec& spec, const FieldElement& x, const FieldElement& y);
FieldElement ff_sub(const FieldSpec& spec, const FieldElement& x, const FieldElement& y);
FieldElement ff_neg(const FieldSpec& spec, const FieldElement& x);
FieldElement ff_mul(const FieldSpec& spec, const FieldElement& x, const FieldElement& y);
FieldElement ff_inv(const FieldSpec& spec, const FieldElement& x);

/// Base-p positional index of an element, in [0, p^k); ff_unindex inverts it.
std::int64_t ff_index(const FieldSpec& spec, const FieldElement& x);
FieldElement ff_unindex(const FieldSpec& spec, std::int64_t index);

} // namespace dilhom
