#pragma once

#include <stdexcept>
#include <string>

namespace dilhom {

// Thrown when a truncated series (or address) does not carry enough
// stored coefficients to resolve the requested quantity.
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

struct division_by_zero : std::runtime_error {
    explicit division_by_zero(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant of the input data failed (e.g. a non-ultrametric
// triple fed to the ball-tree builder).
struct invariant_violation : std::runtime_error {
    explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dilhom
