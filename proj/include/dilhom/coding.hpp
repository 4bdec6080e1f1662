#pragma once

#include <cstdint>
#include <vector>

#include "dilhom/space.hpp"

namespace dilhom {

/// A canonical tree address: the empty address (the base point) or
/// (mu0; tail...) with tail[0] in [1, N-1] and tail[j] in [1, N] for j >= 1.
/// Addresses are finite prefixes of the conceptually infinite sequences;
/// comparisons that would need digits beyond the stored depth throw
/// precision_exhausted.
struct Address {
    bool empty = true;
    std::int64_t mu0 = 0;
    std::vector<int> tail;

    int depth() const { return empty ? 0 : 1 + static_cast<int>(tail.size()); }
    bool operator==(const Address&) const = default;
};

void address_check(const Address& addr, std::int64_t N);

/// Least index at which the two digit sequences differ (index 0 = mu0).
/// Pre: both non-empty and not equal within the stored depths.
int address_eta(const Address& mu, const Address& nu);

/// The ultrametric D on addresses, with distances in the (a, b) family.
ExactDistance address_distance(const Address& mu, const Address& nu, double a, double b);

// ---------------------------------------------------------------------------
// Ball trees over exact ultrametric samples.
// ---------------------------------------------------------------------------

/// A ball B(center, level) = { z : d(center, z) <= a * b^level } restricted
/// to the sample; children partition the members one level down.
struct BallNode {
    int center = 0;               // sample index of the representative
    std::int64_t level = 0;
    int branch_index = 0;         // 1-based among siblings; 0 for sphere nodes
    std::vector<int> points;      // member sample indices, ascending
    std::vector<BallNode> children;
};

struct BallTree {
    int root = 0;
    double a = 1.0;
    double b = 2.0;
    std::vector<BallNode> spheres; // S(root, level), one per realized level, descending
};

/// Builds the sphere/ball hierarchy around `root`. All positive distances
/// must lie in one Geo family and satisfy the ultrametric inequality
/// exactly; a violating triple raises invariant_violation naming it.
BallTree build_ball_tree(const DistanceMatrix& m, int root);

/// Tree addresses for every sample point (root maps to the empty address).
std::vector<Address> encode_points(const BallTree& tree);

struct CodingReport {
    std::int64_t pairs_checked = 0;
    std::vector<std::pair<int, int>> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks d(x,y) == D(addr_x, addr_y) exactly for every pair.
CodingReport verify_coding(const DistanceMatrix& m, const std::vector<Address>& addrs, double a,
                           double b);

// ---------------------------------------------------------------------------
// The canonical coding of the field model.
// ---------------------------------------------------------------------------

/// Address of a canonical point: mu0 = -v where v is the minimal factor
/// valuation, followed by `digits` branch digits read off the packed factor
/// coefficients at successive exponents.
Address canonical_encode(const Space& space, const Point& x, int digits);

/// Inverse: rebuilds the (truncated) canonical point; coefficients beyond
/// the stored digits are zero. `digits` pads the coefficient window.
Point canonical_decode(const Space& space, const Address& addr, int digits);

} // namespace dilhom
