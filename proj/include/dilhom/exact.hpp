#pragma once

#include <cstdint>
#include <string>

namespace dilhom {

/// A distance value kept in symbolic form. Type 0 spaces produce Zero/Fixed,
/// type 1 spaces produce Zero/Geo (a * b^k with an exact integer exponent),
/// type 2 spaces and ingested float data produce Cont. Geo-vs-Geo
/// comparisons within one (a, b) family are pure integer comparisons.
struct ExactDistance {
    enum class Kind { Zero, Fixed, Geo, Cont };
    Kind kind = Kind::Zero;
    double r = 0.0;       // Fixed
    double a = 0.0;       // Geo
    double b = 0.0;       // Geo
    std::int64_t k = 0;   // Geo exponent
    double x = 0.0;       // Cont

    static ExactDistance zero() { return {}; }
    static ExactDistance fixed(double r);
    static ExactDistance geo(double a, double b, std::int64_t k);
    static ExactDistance cont(double x);

    double value() const;
    bool is_zero() const { return kind == Kind::Zero; }
    std::string to_string() const;
};

/// Three-way comparison; exact for Zero and for Geo pairs sharing (a, b),
/// numeric otherwise.
int exact_cmp(const ExactDistance& u, const ExactDistance& v);
bool exact_eq(const ExactDistance& u, const ExactDistance& v);
ExactDistance exact_max(const ExactDistance& u, const ExactDistance& v);

} // namespace dilhom
