#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dilhom/space.hpp"

namespace dilhom {

/// Componentwise affine map x |-> lambda * x + q on a type 1 space. A
/// dilation only when all unit valuations agree; scale_of enforces that.
struct Type1Affine {
    std::vector<LaurentSeries> units; // lambda, one per factor
    FieldPoint shift;                 // q
};

/// A dilation recorded as a finite mapping table (the output of the
/// extension engine). scale_exponent k means distances multiply by b^k.
struct Type1Composite {
    std::int64_t scale_exponent = 0;
    std::vector<std::pair<FieldPoint, FieldPoint>> mapping;
};

/// Euclidean similarity x |-> scale * Q x + t on R^n; the metric d_e^alpha
/// then scales by scale^alpha.
struct Type2Similarity {
    double scale = 1.0;
    std::vector<std::vector<double>> orthogonal; // Q, row-major
    std::vector<double> translation;
};

using DilationMap = std::variant<Type1Affine, Type1Composite, Type2Similarity>;

/// |u|: an exact power b^k for type 1 maps, a positive real for type 2.
struct ExactScale {
    bool geo = true;
    double b = 2.0;
    std::int64_t k = 0;
    double c = 1.0;

    double value() const;
    static ExactScale geo_scale(double b, std::int64_t k) { return {true, b, k, 0}; }
    static ExactScale real_scale(double c) { return {false, 0, 0, c}; }
};

struct PartialMap {
    std::vector<std::pair<Point, Point>> pairs;
};

DilationMap dil_identity(const Space& space);
Point dil_apply(const Space& space, const DilationMap& u, const Point& x);
ExactScale scale_of(const Space& space, const DilationMap& u);
/// w with w(x) = u(v(x)).
DilationMap dil_compose(const Space& space, const DilationMap& u, const DilationMap& v);

/// A dilation fixing `a` and sending `b` to `c`. For multi-factor type 1
/// spaces the result is a Type1Composite whose mapping covers
/// {a, b} + support; elsewhere the map is total (affine / similarity).
DilationMap two_point_witness(const Space& space, const Point& a, const Point& b, const Point& c,
                              const std::vector<Point>& support = {});

/// Extends a partial dilation on a subset of `sample` to all of it.
/// Targets outside the partial's range are canonical points built by greedy
/// placement (least consistent branch digit); the final map multiplies every
/// sample pair distance by exactly the partial's scale.
Type1Composite extend_partial(const Space& space, const std::vector<Point>& sample,
                              const PartialMap& partial);

} // namespace dilhom
