#include "dilhom/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dilhom/coding.hpp"
#include "dilhom/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dilhom {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// exact d(i,k) <= max(d(i,j), d(j,k)); distances assumed in one Geo family
bool triple_ok(const DistanceMatrix& m, std::int64_t i, std::int64_t j, std::int64_t k) {
    const ExactDistance& ij = m.at(i, j);
    const ExactDistance& jk = m.at(j, k);
    const ExactDistance& ik = m.at(i, k);
    return exact_cmp(ik, exact_max(ij, jk)) <= 0 &&
           exact_cmp(ij, exact_max(ik, jk)) <= 0 &&
           exact_cmp(jk, exact_max(ij, ik)) <= 0;
}

std::string triple_name(std::int64_t i, std::int64_t j, std::int64_t k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

} // namespace

SweepResult ultrametric_sweep(const DistanceMatrix& m, bool parallel) {
    SweepResult r;
    r.property = "ultrametric";
    const std::int64_t n = m.n_points;
    double t0 = now_seconds();
    std::int64_t bad = 0;
    std::int64_t first = -1;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : bad)
#endif
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i + 1; j < n; ++j)
                for (std::int64_t k = j + 1; k < n; ++k)
                    if (!triple_ok(m, i, j, k)) {
                        ++bad;
#ifdef _OPENMP
#pragma omp critical
#endif
                        {
                            std::int64_t flat = (i * n + j) * n + k;
                            if (first < 0 || flat < first) first = flat;
                        }
                    }
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i + 1; j < n; ++j)
                for (std::int64_t k = j + 1; k < n; ++k)
                    if (!triple_ok(m, i, j, k)) {
                        ++bad;
                        if (first < 0) first = (i * n + j) * n + k;
                    }
    }
    r.checked = n * (n - 1) * (n - 2) / 6;
    r.violations = bad;
    if (first >= 0)
        r.first_failure = "triple " + triple_name(first / (n * n), (first / n) % n, first % n);
    r.seconds = now_seconds() - t0;
    return r;
}

SweepResult gamma_sweep(const DistanceMatrix& m, bool parallel) {
    SweepResult r;
    r.property = "gamma";
    const std::int64_t n = m.n_points;
    double t0 = now_seconds();
    double a = 0, b = 0;
    for (std::int64_t i = 0; i < n * n; ++i)
        if (m.entries[static_cast<size_t>(i)].kind == ExactDistance::Kind::Geo) {
            a = m.entries[static_cast<size_t>(i)].a;
            b = m.entries[static_cast<size_t>(i)].b;
            break;
        }
    std::int64_t bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : bad) if (parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            const ExactDistance& d = m.at(i, j);
            if (d.is_zero()) continue;
            bool ok = d.kind == ExactDistance::Kind::Geo && d.a == a && d.b == b;
            if (ok) {
                double v = a * std::pow(b, static_cast<double>(d.k));
                ok = std::fabs(d.value() - v) <= 1e-12 * v;
            }
            if (!ok) ++bad;
        }
    r.checked = n * (n - 1) / 2;
    r.violations = bad;
    if (bad > 0) r.first_failure = "a positive distance left the a*b^k family";
    r.seconds = now_seconds() - t0;
    return r;
}

SweepResult translation_sweep(const Space& space, std::int64_t triples, std::int64_t depth,
                              std::uint64_t seed, bool parallel) {
    if (space.type() != 1)
        throw std::invalid_argument("translation_sweep: type 1 spaces only");
    SweepResult r;
    r.property = "translation";
    double t0 = now_seconds();
    std::int64_t count = std::min<std::int64_t>(3 * triples, 120);
    auto pts = sample(space, count, depth, seed);
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5ull);
    std::uniform_int_distribution<std::int64_t> pick(0, count - 1);
    std::vector<std::array<std::int64_t, 3>> idx;
    for (std::int64_t t = 0; t < triples; ++t)
        idx.push_back({pick(rng), pick(rng), pick(rng)});
    std::int64_t bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : bad) if (parallel)
#endif
    for (std::int64_t t = 0; t < triples; ++t) {
        const auto& x = std::get<FieldPoint>(pts[static_cast<size_t>(idx[static_cast<size_t>(t)][0])]);
        const auto& y = std::get<FieldPoint>(pts[static_cast<size_t>(idx[static_cast<size_t>(t)][1])]);
        const auto& tr = std::get<FieldPoint>(pts[static_cast<size_t>(idx[static_cast<size_t>(t)][2])]);
        ExactDistance before = distance(space, x, y);
        ExactDistance after = distance(space, fp_add(space, x, tr), fp_add(space, y, tr));
        if (!exact_eq(before, after)) ++bad;
    }
    r.checked = triples;
    r.violations = bad;
    if (bad > 0) r.first_failure = "translation changed a distance";
    r.seconds = now_seconds() - t0;
    return r;
}

DilationMap random_dilation(const Space& space, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (space.type() == 1) {
        std::uniform_int_distribution<std::int64_t> val(-2, 2);
        std::int64_t m = val(rng);
        Type1Affine u;
        for (const auto& spec : space.factors) {
            u.units.push_back(ls_random(spec, m, m, 8, rng()));
            u.shift.factors.push_back(ls_random(spec, -2, 2, 8, rng()));
        }
        return u;
    }
    if (space.type() == 2) {
        int n = space.as2().n;
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::uniform_real_distribution<double> sc(0.5, 2.0);
        std::vector<double> v(static_cast<size_t>(n));
        double norm = 0;
        for (auto& c : v) {
            c = unif(rng);
            norm += c * c;
        }
        norm = std::sqrt(norm);
        Type2Similarity s;
        s.scale = sc(rng);
        s.orthogonal.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double q = (i == j) ? 1.0 : 0.0;
                if (norm > 1e-12)
                    q -= 2.0 * (v[static_cast<size_t>(i)] / norm) * (v[static_cast<size_t>(j)] / norm);
                s.orthogonal[static_cast<size_t>(i)][static_cast<size_t>(j)] = q;
            }
        s.translation.assign(static_cast<size_t>(n), 0.0);
        for (auto& c : s.translation) c = unif(rng);
        return s;
    }
    throw std::invalid_argument("random_dilation: unsupported space type");
}

SweepResult scale_hom_sweep(const Space& space, std::int64_t pairs, std::uint64_t seed) {
    SweepResult r;
    r.property = "scale-hom";
    double t0 = now_seconds();
    std::int64_t bad = 0;
    for (std::int64_t t = 0; t < pairs; ++t) {
        DilationMap u = random_dilation(space, seed + 2 * static_cast<std::uint64_t>(t));
        DilationMap v = random_dilation(space, seed + 2 * static_cast<std::uint64_t>(t) + 1);
        ExactScale su = scale_of(space, u);
        ExactScale sv = scale_of(space, v);
        ExactScale sw = scale_of(space, dil_compose(space, u, v));
        bool ok;
        if (su.geo && sv.geo && sw.geo)
            ok = sw.k == su.k + sv.k && sw.b == su.b;
        else
            ok = std::fabs(sw.value() - su.value() * sv.value()) <=
                 1e-12 * su.value() * sv.value();
        if (!ok) {
            ++bad;
            if (r.first_failure.empty())
                r.first_failure = "pair " + std::to_string(t) + ": |u o v| != |u| |v|";
        }
    }
    r.checked = pairs;
    r.violations = bad;
    r.seconds = now_seconds() - t0;
    return r;
}

SweepResult two_point_sweep(const Space& space, std::int64_t triples, std::int64_t probes,
                            std::int64_t count, std::int64_t depth, std::uint64_t seed) {
    SweepResult r;
    r.property = "two-point";
    double t0 = now_seconds();
    auto pts = sample(space, count, depth, seed);
    std::mt19937_64 rng(seed ^ 0x51ed2701ull);
    std::uniform_int_distribution<std::int64_t> pick(0, count - 1);
    std::int64_t bad = 0;
    for (std::int64_t t = 0; t < triples; ++t) {
        std::int64_t ia = pick(rng), ib = pick(rng), ic = pick(rng);
        if (ia == ib || ia == ic || ib == ic) {
            --t;
            continue;
        }
        std::vector<Point> support;
        std::vector<std::int64_t> sup_idx;
        for (std::int64_t p = 0; p < 2 * probes; ++p) sup_idx.push_back(pick(rng));
        for (auto s : sup_idx) support.push_back(pts[static_cast<size_t>(s)]);
        bool ok = true;
        std::string why;
        // type 2 maps are float similarities; "equal" there means within
        // 1e-9 of the distance scale in play
        auto near = [&](const Point& x, const Point& y) {
            if (space.type() != 2) return point_known_equal(space, x, y);
            const auto& rx = std::get<RealPoint>(x);
            const auto& ry = std::get<RealPoint>(y);
            double s = 0, mag = 1.0;
            for (size_t c = 0; c < rx.coords.size(); ++c) {
                double t = rx.coords[c] - ry.coords[c];
                s += t * t;
                mag = std::max({mag, std::fabs(rx.coords[c]), std::fabs(ry.coords[c])});
            }
            return std::sqrt(s) <= 1e-9 * mag;
        };
        try {
            DilationMap u = two_point_witness(space, pts[static_cast<size_t>(ia)],
                                              pts[static_cast<size_t>(ib)],
                                              pts[static_cast<size_t>(ic)], support);
            if (!near(dil_apply(space, u, pts[static_cast<size_t>(ia)]),
                      pts[static_cast<size_t>(ia)])) {
                ok = false;
                why = "u(a) != a";
            }
            if (ok && !near(dil_apply(space, u, pts[static_cast<size_t>(ib)]),
                            pts[static_cast<size_t>(ic)])) {
                ok = false;
                why = "u(b) != c";
            }
            ExactScale sc = scale_of(space, u);
            for (std::int64_t p = 0; ok && p + 1 < static_cast<std::int64_t>(support.size());
                 p += 2) {
                const Point& x = support[static_cast<size_t>(p)];
                const Point& y = support[static_cast<size_t>(p + 1)];
                ExactDistance before = distance(space, x, y);
                if (before.is_zero()) continue;
                ExactDistance after =
                    distance(space, dil_apply(space, u, x), dil_apply(space, u, y));
                if (before.kind == ExactDistance::Kind::Geo && sc.geo) {
                    if (!(after.kind == ExactDistance::Kind::Geo &&
                          after.k == before.k + sc.k)) {
                        ok = false;
                        why = "exact scale ratio broke on a probe pair";
                    }
                } else {
                    double want = sc.value() * before.value();
                    if (std::fabs(after.value() - want) > 1e-9 * want) {
                        ok = false;
                        why = "probe ratio off by more than 1e-9";
                    }
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        if (!ok) {
            ++bad;
            if (r.first_failure.empty())
                r.first_failure = "triple " + triple_name(ia, ib, ic) + ": " + why;
        }
    }
    r.checked = triples;
    r.violations = bad;
    r.seconds = now_seconds() - t0;
    return r;
}

SweepResult coding_sweep(const Space& space, std::int64_t count, std::int64_t depth,
                         std::uint64_t seed) {
    if (space.type() != 1) throw std::invalid_argument("coding_sweep: type 1 spaces only");
    SweepResult r;
    r.property = "coding";
    double t0 = now_seconds();
    auto pts = sample(space, count, depth, seed);
    DistanceMatrix m = distance_matrix(space, pts);
    BallTree tree = build_ball_tree(m, 0);
    auto addrs = encode_points(tree);
    CodingReport rep = verify_coding(m, addrs, space.as1().a, space.as1().b);
    r.checked = rep.pairs_checked;
    r.violations = static_cast<std::int64_t>(rep.violations.size());
    if (!rep.ok())
        r.first_failure = "pair (" + std::to_string(rep.violations.front().first) + "," +
                          std::to_string(rep.violations.front().second) + ")";
    r.seconds = now_seconds() - t0;
    return r;
}

} // namespace dilhom
