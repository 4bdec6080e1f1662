#include "dilhom/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dilhom/clique.hpp"
#include "dilhom/errors.hpp"

namespace dilhom {

int detect_type(const std::vector<double>& gamma_sorted, double rel_tol) {
    GammaSummary g = gamma_from_values(gamma_sorted, rel_tol);
    switch (g.flag) {
        case GammaFlag::SingleValue: return 0;
        case GammaFlag::Geometric: return 1;
        case GammaFlag::DenseLike: return 2;
    }
    return 2;
}

std::vector<int> max_equidistant_clique(const DistanceMatrix& m, const ExactDistance& r,
                                        double tol) {
    if (m.n_points < 1) throw std::invalid_argument("max_equidistant_clique: empty matrix");
    const int n = static_cast<int>(m.n_points);
    std::vector<std::vector<char>> adj(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    bool realized = false;
    double rv = r.value();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& d = m.at(i, j);
            bool eq;
            if (d.kind == ExactDistance::Kind::Geo && r.kind == ExactDistance::Kind::Geo &&
                d.a == r.a && d.b == r.b)
                eq = d.k == r.k;
            else
                eq = !d.is_zero() && std::fabs(d.value() - rv) <= tol * rv;
            if (eq) {
                adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
                adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = 1;
                realized = true;
            }
        }
    if (!realized) throw std::invalid_argument("max_equidistant_clique: r not realized in the matrix");
    return max_clique(adj);
}

namespace {

// exact ultrametric gate on a shared-Geo-family matrix
bool has_ultrametric_violation(const DistanceMatrix& m, std::int64_t& vi, std::int64_t& vj,
                               std::int64_t& vk) {
    const std::int64_t n = m.n_points;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j)
            for (std::int64_t k = j + 1; k < n; ++k) {
                std::int64_t ij = m.at(i, j).k, jk = m.at(j, k).k, ik = m.at(i, k).k;
                if (ik > std::max(ij, jk) || ij > std::max(ik, jk) || jk > std::max(ij, ik)) {
                    vi = i;
                    vj = j;
                    vk = k;
                    return true;
                }
            }
    return false;
}

} // namespace

ClassificationReport classify(const DistanceMatrix& m, const TolerancePolicy& pol) {
    if (m.n_points < 2) throw std::invalid_argument("classify: need at least 2 points");
    ClassificationReport rep;
    rep.tolerances = pol;
    rep.gamma = gamma_observed(m, pol.rel_tol, pol.gap_ratio);
    rep.geometric_fit_residual = rep.gamma.fit_residual;

    switch (rep.gamma.flag) {
        case GammaFlag::SingleValue: {
            rep.detected_type = 0;
            double r = rep.gamma.values.front();
            rep.clique_witness = max_equidistant_clique(m, rep.gamma.exact.front(), pol.rel_tol);
            rep.params = Type0Desc{static_cast<std::int64_t>(rep.clique_witness.size()), r};
            return rep;
        }
        case GammaFlag::Geometric: {
            if (rep.gamma.exact_geo) {
                std::int64_t i, j, k;
                if (has_ultrametric_violation(m, i, j, k))
                    throw invariant_violation("classification-failed: geometric distance set with an "
                                              "exact ultrametric violation at triple (" +
                                              std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(k) + ")");
            }
            rep.detected_type = 1;
            double a = rep.gamma.fit_a, b = rep.gamma.fit_b;
            // clique at the progression value nearest a (preferring a itself)
            ExactDistance r = rep.gamma.exact.front();
            double best_gap = -1;
            for (size_t t = 0; t < rep.gamma.values.size(); ++t) {
                double gap = std::fabs(std::log(rep.gamma.values[t] / a));
                if (best_gap < 0 || gap < best_gap) {
                    best_gap = gap;
                    r = rep.gamma.exact[t];
                }
            }
            rep.a_directly_observed = best_gap <= pol.rel_tol;
            if (!rep.a_directly_observed)
                rep.notes.push_back("fitted a was not directly observed; clique taken at the nearest "
                                    "realized progression value");
            rep.clique_witness = max_equidistant_clique(m, r, pol.rel_tol);
            rep.params = Type1Desc{static_cast<std::int64_t>(rep.clique_witness.size()), a, b};
            validate_descriptor(rep.params);
            return rep;
        }
        default: {
            rep.detected_type = 2;
            // the set A: clique at the most repeated distance (1 for
            // simplex-seeded samples)
            std::vector<double> vals;
            for (std::int64_t i = 0; i < m.n_points; ++i)
                for (std::int64_t j = i + 1; j < m.n_points; ++j)
                    if (!m.at(i, j).is_zero()) vals.push_back(m.at(i, j).value());
            std::sort(vals.begin(), vals.end());
            double best_v = vals.front();
            size_t best_count = 1, run = 1;
            for (size_t t = 1; t < vals.size(); ++t) {
                if (std::fabs(vals[t] - vals[t - run]) <= pol.rel_tol * vals[t])
                    ++run;
                else
                    run = 1;
                if (run > best_count) {
                    best_count = run;
                    best_v = vals[t];
                }
            }
            rep.clique_witness = max_equidistant_clique(m, ExactDistance::cont(best_v), pol.rel_tol);
            std::int64_t n = static_cast<std::int64_t>(rep.clique_witness.size()) - 1;
            if (n < 1) n = 1;
            rep.n_is_lower_bound = true;
            rep.notes.push_back("type 2 size parameter from an observed equidistant set; a lower bound "
                                "unless the sample was seeded with a maximal simplex");
            // alpha from a sampled ball around the first point
            std::vector<double> from_center;
            for (std::int64_t j = 1; j < m.n_points; ++j)
                if (!m.at(0, j).is_zero()) from_center.push_back(m.at(0, j).value());
            std::sort(from_center.begin(), from_center.end());
            double r = from_center[from_center.size() * 3 / 5];
            double alpha = alpha_from_ball_matrix(m, 0, r);
            if (alpha > 1.0) alpha = 1.0;
            if (!(alpha > 0)) alpha = 1e-3;
            rep.alpha_estimate = alpha;
            rep.params = Type2Desc{static_cast<int>(n), alpha};
            return rep;
        }
    }
}

double alpha_from_ball_matrix(const DistanceMatrix& m, int center, double r) {
    if (center < 0 || center >= m.n_points) throw std::invalid_argument("alpha_from_ball: bad center");
    if (!(r > 0)) throw std::invalid_argument("alpha_from_ball: r must be positive");
    std::vector<std::int64_t> ball;
    for (std::int64_t j = 0; j < m.n_points; ++j)
        if (j == center || m.at(center, j).value() <= r) ball.push_back(j);
    if (ball.size() < 2) throw std::invalid_argument("alpha_from_ball: degenerate ball");
    double diam = 0;
    for (size_t i = 0; i < ball.size(); ++i)
        for (size_t j = i + 1; j < ball.size(); ++j)
            diam = std::max(diam, m.at(ball[i], ball[j]).value());
    if (!(diam > 0)) throw std::invalid_argument("alpha_from_ball: degenerate ball");
    return std::log2(diam / r);
}

double alpha_from_ball_analytic(const Type2Desc& desc, double r) {
    if (!(r > 0)) throw std::invalid_argument("alpha_from_ball: r must be positive");
    double euclid_radius = std::pow(r, 1.0 / desc.alpha);
    double diam = std::pow(2.0 * euclid_radius, desc.alpha);
    return std::log2(diam / r);
}

double alpha_monte_carlo(const Type2Desc& desc, double r, int npoints, std::uint64_t seed) {
    if (!(r > 0)) throw std::invalid_argument("alpha_monte_carlo: r must be positive");
    if (npoints < 2) throw std::invalid_argument("alpha_monte_carlo: need at least 2 points");
    const int n = desc.n;
    double R = std::pow(r, 1.0 / desc.alpha); // Euclidean ball radius
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(npoints));
    for (int i = 0; i < npoints; ++i) {
        std::vector<double> v(static_cast<size_t>(n));
        double norm = 0;
        for (auto& c : v) {
            c = gauss(rng);
            norm += c * c;
        }
        norm = std::sqrt(norm);
        if (norm == 0) norm = 1;
        double rad = R * std::pow(unif(rng), 1.0 / n);
        for (auto& c : v) c = c / norm * rad;
        pts.push_back(std::move(v));
    }
    // the diameter pair sits near the boundary; restrict to the outermost
    // candidates to keep the pair scan quadratic in a small set
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        double na = 0, nb = 0;
        for (double c : a) na += c * c;
        for (double c : b) nb += c * c;
        return na > nb;
    });
    size_t keep = std::min<size_t>(pts.size(), 2000);
    double diam_e = 0;
    for (size_t i = 0; i < keep; ++i)
        for (size_t j = i + 1; j < keep; ++j) {
            double s = 0;
            for (size_t c = 0; c < pts[i].size(); ++c) {
                double t = pts[i][c] - pts[j][c];
                s += t * t;
            }
            diam_e = std::max(diam_e, s);
        }
    double diam = std::pow(std::sqrt(diam_e), desc.alpha);
    return std::log2(diam / r);
}

} // namespace dilhom
