#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dilhom/exact.hpp"
#include "dilhom/laurent.hpp"

namespace dilhom {

// ---------------------------------------------------------------------------
// Descriptors for the three canonical families.
// ---------------------------------------------------------------------------

/// D_{size, r}: a finite set with the scaled discrete metric r * delta.
struct Type0Desc {
    std::int64_t size = 2;
    double r = 1.0;
    bool operator==(const Type0Desc&) const = default;
};

/// F_{n, a, b}: the product of Laurent-series fields over the prime-power
/// factors of n, with metric a * b^{-min_s |x_s - y_s|}.
struct Type1Desc {
    std::int64_t n = 2;
    double a = 1.0;
    double b = 2.0;
    bool operator==(const Type1Desc&) const = default;
};

/// R_{n, alpha}: R^n with the snowflaked Euclidean metric d_e^alpha.
struct Type2Desc {
    int n = 1;
    double alpha = 1.0;
    bool operator==(const Type2Desc&) const = default;
};

using SpaceDescriptor = std::variant<Type0Desc, Type1Desc, Type2Desc>;

int descriptor_type(const SpaceDescriptor& d); // 0, 1 or 2
void validate_descriptor(const SpaceDescriptor& d); // throws invalid_argument naming the constraint

std::vector<std::pair<std::int64_t, int>> prime_decompose(std::int64_t n);

/// A space handle: the descriptor plus, for type 1, the field specs of all
/// prime-power factors (sorted by prime).
struct Space {
    SpaceDescriptor desc;
    std::vector<FieldSpec> factors;

    int type() const { return descriptor_type(desc); }
    const Type0Desc& as0() const { return std::get<Type0Desc>(desc); }
    const Type1Desc& as1() const { return std::get<Type1Desc>(desc); }
    const Type2Desc& as2() const { return std::get<Type2Desc>(desc); }
};

Space space_make(const SpaceDescriptor& desc);

// ---------------------------------------------------------------------------
// Points.
// ---------------------------------------------------------------------------

struct DiscretePoint {
    std::int64_t index = 0;
};

struct FieldPoint {
    std::vector<LaurentSeries> factors; // one series per factor field
};

struct RealPoint {
    std::vector<double> coords;
};

using Point = std::variant<DiscretePoint, FieldPoint, RealPoint>;

/// The origin of a space (index 0 / all-zero series / zero vector).
Point space_origin(const Space& space);

ExactDistance distance(const Space& space, const Point& x, const Point& y);

/// Componentwise difference of two type 1 points.
FieldPoint fp_sub(const Space& space, const FieldPoint& x, const FieldPoint& y);
FieldPoint fp_add(const Space& space, const FieldPoint& x, const FieldPoint& y);
bool point_known_equal(const Space& space, const Point& x, const Point& y);

/// Deterministic sample of pairwise-distinct points.
///
/// Type 1 samples start with the n constant points (one per packed constant
/// digit), so the distance a is always realized with a full equidistant set;
/// series valuations land in [-depth, depth] with prec 2*depth+1. Type 2
/// samples start with the vertices of a regular unit simplex whenever
/// count >= n+1.
std::vector<Point> sample(const Space& space, std::int64_t count, std::int64_t depth,
                          std::uint64_t seed);

/// All type 1 points whose factor coefficients are supported on exponents
/// [0, depth) — n^depth points.
std::vector<Point> exhaustive_sample(const Space& space, int depth);

// ---------------------------------------------------------------------------
// Distance matrices and observed Gamma structure.
// ---------------------------------------------------------------------------

struct DistanceMatrix {
    std::int64_t n_points = 0;
    std::vector<ExactDistance> entries; // row-major n x n

    const ExactDistance& at(std::int64_t i, std::int64_t j) const {
        return entries[static_cast<size_t>(i * n_points + j)];
    }
    ExactDistance& at(std::int64_t i, std::int64_t j) {
        return entries[static_cast<size_t>(i * n_points + j)];
    }
};

DistanceMatrix distance_matrix(const Space& space, const std::vector<Point>& pts);

enum class GammaFlag { SingleValue, Geometric, DenseLike };

struct GammaSummary {
    std::vector<double> values;          // sorted distinct positive distances
    std::vector<ExactDistance> exact;    // matching symbolic values when available
    GammaFlag flag = GammaFlag::SingleValue;
    bool exact_geo = false;              // all entries shared one Geo family
    double fit_a = 0.0;                  // geometric fit a * b^k
    double fit_b = 0.0;
    double fit_residual = 0.0;           // max relative deviation in log space
    double rel_tol = 1e-9;
    double gap_ratio_threshold = 1.25;
};

GammaSummary gamma_observed(const DistanceMatrix& m, double rel_tol = 1e-9,
                            double gap_ratio_threshold = 1.25);

/// Same analysis on a plain list of positive distances (no exact sidecar).
GammaSummary gamma_from_values(std::vector<double> values, double rel_tol = 1e-9,
                               double gap_ratio_threshold = 1.25);

std::string gamma_flag_name(GammaFlag f);

} // namespace dilhom
