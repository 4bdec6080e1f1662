#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dilhom/field.hpp"

namespace dilhom {

/// Valuation of a Laurent series: either a finite integer or +infinity
/// (the zero series).
struct Valuation {
    bool infinite = false;
    std::int64_t value = 0;

    static Valuation inf() { return {true, 0}; }
    static Valuation of(std::int64_t v) { return {false, v}; }
    bool operator==(const Valuation&) const = default;
};

/// A truncated formal Laurent series over F_{p^k}.
///
/// Coefficients are stored for exponents in the window [v0, v0 + prec());
/// exponents below v0 are exactly zero, exponents at or above the window end
/// are unknown. The zero series is flagged explicitly (its coefficients are
/// known everywhere), so the +infinity valuation is never inferred from a
/// truncation that merely looks zero.
/// `entire` marks a series whose coefficients above the window are known to
/// be zero too (a Laurent polynomial, e.g. a sampled literal or a monomial).
/// Arithmetic on entire inputs stays entire; ls_inv and window narrowing
/// drop the flag, and from then on an all-zero window is an unresolved
/// valuation, not the zero series.
struct LaurentSeries {
    FieldSpec spec;
    bool zero_flag = false;
    std::int64_t v0 = 0;
    std::vector<FieldElement> coeffs; // size == prec
    bool entire = true;

    std::int64_t prec() const { return static_cast<std::int64_t>(coeffs.size()); }
    /// Coefficient at an exponent; zero below the window (and above it for
    /// entire series), throws above the knowledge horizon otherwise.
    FieldElement coeff_at(std::int64_t exponent) const;
};

LaurentSeries ls_zero(const FieldSpec& spec);
/// c * X^e with a window of `prec` coefficients starting at e.
LaurentSeries ls_monomial(const FieldSpec& spec, const FieldElement& c, std::int64_t e,
                          std::int64_t prec = 1);
/// Constant series c, window [0, prec).
LaurentSeries ls_constant(const FieldSpec& spec, const FieldElement& c, std::int64_t prec = 1);

/// Least stored exponent with a nonzero coefficient; +inf for the zero
/// series. Throws precision_exhausted when the whole window is zero but the
/// series is not flagged zero.
Valuation ls_valuation(const LaurentSeries& s);

/// Like ls_valuation but returns nullopt instead of throwing.
std::optional<Valuation> ls_try_valuation(const LaurentSeries& s);

bool ls_known_equal(const LaurentSeries& s, const LaurentSeries& t);

LaurentSeries ls_add(const LaurentSeries& s, const LaurentSeries& t);
LaurentSeries ls_neg(const LaurentSeries& s);
LaurentSeries ls_sub(const LaurentSeries& s, const LaurentSeries& t);
LaurentSeries ls_mul(const LaurentSeries& s, const LaurentSeries& t);
/// Multiplicative inverse with `prec` correct coefficients from the
/// valuation of the result.
LaurentSeries ls_inv(const LaurentSeries& s, std::int64_t prec);

/// Drop leading zero coefficients so coeffs[0] is the valuation coefficient
/// (no-op on the zero series). Throws precision_exhausted when unresolvable.
LaurentSeries ls_normalize(const LaurentSeries& s);

/// Deterministic pseudo-random nonzero series: valuation uniform in
/// [val_lo, val_hi], leading coefficient nonzero, window of `prec`
/// coefficients from the valuation.
LaurentSeries ls_random(const FieldSpec& spec, std::int64_t val_lo, std::int64_t val_hi,
                        std::int64_t prec, std::uint64_t seed);

} // namespace dilhom
