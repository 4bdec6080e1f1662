#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilhom/space.hpp"

namespace dilhom {

/// All sampling-artifact thresholds in one place; surfaced verbatim in the
/// report.
struct TolerancePolicy {
    double rel_tol = 1e-9;        // float equality
    double gap_ratio = 1.25;      // dense/discrete split on consecutive value ratios
};

struct ClassificationReport {
    int detected_type = 0;
    SpaceDescriptor params;
    std::vector<int> clique_witness; // the set A (point indices)
    GammaSummary gamma;
    double geometric_fit_residual = 0.0;
    double alpha_estimate = 0.0;
    TolerancePolicy tolerances;
    bool n_is_lower_bound = false;   // clique size from an unseeded sample
    bool a_directly_observed = true; // type 1: the fitted a was realized in the sample
    std::vector<std::string> notes;
};

/// 0 if a single value, 1 if a geometric progression with ratio above the
/// dense/discrete threshold, 2 otherwise.
int detect_type(const std::vector<double>& gamma_sorted, double rel_tol);

/// Maximum clique of the graph whose edges are the pairs at distance r
/// (exact for shared Geo families, |d - r| <= tol * r otherwise);
/// deterministic lexicographically-least witness.
std::vector<int> max_equidistant_clique(const DistanceMatrix& m, const ExactDistance& r,
                                        double tol);

ClassificationReport classify(const DistanceMatrix& m, const TolerancePolicy& pol = {});

/// log2(diam / r) with the ball diameter read off sampled pairwise
/// distances inside B(center, r).
double alpha_from_ball_matrix(const DistanceMatrix& m, int center, double r);

/// Analytic route: the closed ball of radius r in R_{n,alpha} is the
/// Euclidean ball of radius r^{1/alpha}, so its snowflaked diameter is
/// 2^alpha * r.
double alpha_from_ball_analytic(const Type2Desc& desc, double r);

/// Monte-Carlo route: uniform points in the ball, diameter from the
/// near-boundary candidates.
double alpha_monte_carlo(const Type2Desc& desc, double r, int npoints, std::uint64_t seed);

} // namespace dilhom
