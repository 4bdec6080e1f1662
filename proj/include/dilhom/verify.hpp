#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilhom/dilation.hpp"
#include "dilhom/space.hpp"

namespace dilhom {

struct SweepResult {
    std::string property;
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    double seconds = 0.0;
    std::string first_failure; // empty when clean
    bool ok() const { return violations == 0; }
};

/// Exact ultrametric inequality on every triple of the matrix (type 1
/// matrices; Geo-exponent comparisons). `parallel` switches between the
/// serial reference and the OpenMP kernel; both give identical results.
SweepResult ultrametric_sweep(const DistanceMatrix& m, bool parallel = true);

/// Every positive distance belongs to one Geo family and its float value
/// reparses from (a, b, k) within 1e-12 relative.
SweepResult gamma_sweep(const DistanceMatrix& m, bool parallel = true);

/// distance(x + t, y + t) == distance(x, y) exactly over sampled (x, y, t)
/// triples of a type 1 space.
SweepResult translation_sweep(const Space& space, std::int64_t triples, std::int64_t depth,
                              std::uint64_t seed, bool parallel = true);

/// scale_of(u o v) == scale_of(u) * scale_of(v) over random dilation pairs.
SweepResult scale_hom_sweep(const Space& space, std::int64_t pairs, std::uint64_t seed);

/// Random triples (a, b, c): the witness fixes a, sends b to c, and rescales
/// all probe-pair distances by one constant (exact type 1, 1e-9 type 2).
SweepResult two_point_sweep(const Space& space, std::int64_t triples, std::int64_t probes,
                            std::int64_t count, std::int64_t depth, std::uint64_t seed);

/// Ball-tree addresses reproduce every pairwise distance exactly.
SweepResult coding_sweep(const Space& space, std::int64_t count, std::int64_t depth,
                         std::uint64_t seed);

/// Random dilation for sweep drivers: an affine map with unit factors of a
/// common valuation for type 1, a similarity for type 2.
DilationMap random_dilation(const Space& space, std::uint64_t seed);

} // namespace dilhom
