#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dilhom/space.hpp"

namespace dilhom {

/// Product of spaces under the maximum metric, together with the point-level
/// pack/unpack maps onto the canonical combined space. All factors must be
/// type 1 with one shared (a, b), or all type 0 with one shared r.
struct SupProduct {
    Space combined;
    std::vector<Space> parts;

    /// One point per factor space -> the matching point of the combined
    /// space. For type 1 the per-prime coefficient vectors of the factors
    /// are concatenated exponent by exponent; this is an additive
    /// isomorphism and preserves the minimum valuation, so the max metric
    /// transports exactly.
    Point pack(const std::vector<Point>& xs) const;
    std::vector<Point> unpack(const Point& x) const;

    /// max_i d_i(x_i, y_i), evaluated factor by factor.
    ExactDistance direct_distance(const std::vector<Point>& xs,
                                  const std::vector<Point>& ys) const;
};

SupProduct sup_product(const std::vector<SpaceDescriptor>& descs);

/// Product of snowflaked Euclidean spaces with a common alpha. The factor
/// distances d_k are recombined as (sum d_k^(2/alpha))^(alpha/2), which
/// equals d_e^alpha on the concatenated coordinates.
struct EuclideanProduct {
    Type2Desc combined;
    std::vector<Type2Desc> parts;

    double metric(const std::vector<double>& x, const std::vector<double>& y) const;
};

EuclideanProduct euclidean_product(const std::vector<Type2Desc>& descs);

using MetricFn =
    std::function<double(const std::vector<double>&, const std::vector<double>&)>;

struct ProductProbeReport {
    int max_equidistant_clique_size = 0;
    std::vector<std::vector<double>> clique_points;
    int homogeneity_violations = 0; // triples with no Euclidean-similarity witness
    int triples_checked = 0;
};

/// Empirical probe of an arbitrary metric on R^dim: the largest equidistant
/// clique found over a candidate pool (signed unit vectors, a regular
/// simplex, random points), and a count of sampled triples (a, b, c) where
/// the Euclidean similarity fixing a and sending b to c fails to rescale
/// the metric by a constant.
ProductProbeReport probe_product_homogeneity(const MetricFn& metric, int dim, int samples,
                                             std::uint64_t seed);

} // namespace dilhom
