#include <doctest.h>

#include <cmath>

#include "dilhom/classify.hpp"

using namespace dilhom;

TEST_CASE("detect_type on the canonical shapes") {
    CHECK(detect_type({1.0}, 1e-9) == 0);
    CHECK(detect_type({0.5, 1.0, 2.0, 4.0}, 1e-9) == 1);
    std::vector<double> dense;
    for (int i = 0; i < 500; ++i) dense.push_back(1.0 + i * 0.002);
    CHECK(detect_type(dense, 1e-9) == 2);
}

TEST_CASE("equidistant clique on a dense type 1 sample") {
    Space f6 = space_make(Type1Desc{6, 1.0, 2.0});
    auto pts = sample(f6, 80, 3, 4);
    DistanceMatrix m = distance_matrix(f6, pts);
    auto clique = max_equidistant_clique(m, ExactDistance::geo(1, 2, 0), 1e-9);
    CHECK(clique.size() == 6);
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            CHECK(m.at(clique[i], clique[j]).k == 0);
    CHECK_THROWS_AS(max_equidistant_clique(m, ExactDistance::cont(0.3), 1e-9),
                    std::invalid_argument);
}

TEST_CASE("clique in the plane caps at the triangle") {
    Space r2 = space_make(Type2Desc{2, 1.0});
    auto pts = sample(r2, 40, 3, 4);
    DistanceMatrix m = distance_matrix(r2, pts);
    auto clique = max_equidistant_clique(m, ExactDistance::cont(1.0), 1e-9);
    CHECK(clique.size() == 3);
}

TEST_CASE("classify round trips for each type") {
    // D_{3, 0.5}
    Space d3 = space_make(Type0Desc{3, 0.5});
    auto rep0 = classify(distance_matrix(d3, sample(d3, 3, 1, 0)));
    CHECK(rep0.detected_type == 0);
    CHECK(std::get<Type0Desc>(rep0.params) == Type0Desc{3, 0.5});

    // F_{6, 1.5, 3}
    Space f6 = space_make(Type1Desc{6, 1.5, 3.0});
    auto rep1 = classify(distance_matrix(f6, sample(f6, 150, 4, 1)));
    CHECK(rep1.detected_type == 1);
    auto t1 = std::get<Type1Desc>(rep1.params);
    CHECK(t1.n == 6);
    CHECK(t1.a == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(t1.b == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep1.gamma.exact_geo);

    // R_{2, 1/2}, simplex-seeded
    Space r2 = space_make(Type2Desc{2, 0.5});
    auto rep2 = classify(distance_matrix(r2, sample(r2, 200, 3, 2)));
    CHECK(rep2.detected_type == 2);
    auto t2 = std::get<Type2Desc>(rep2.params);
    CHECK(t2.n == 2);
    CHECK(rep2.n_is_lower_bound);
}

TEST_CASE("classify refuses type 1 on an exact ultrametric violation") {
    DistanceMatrix m;
    m.n_points = 4;
    m.entries.assign(16, ExactDistance::zero());
    auto set = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
        m.at(i, j) = ExactDistance::geo(1, 2, k);
        m.at(j, i) = m.at(i, j);
    };
    set(0, 1, 0);
    set(1, 2, 0);
    set(0, 2, 2);
    set(0, 3, 1);
    set(1, 3, 1);
    set(2, 3, 2);
    CHECK_THROWS_AS(classify(m), invariant_violation);
}

TEST_CASE("alpha from ball diameters") {
    // real line: diam of B(0, r) is 2r
    CHECK(alpha_from_ball_analytic(Type2Desc{1, 1.0}, 0.7) == doctest::Approx(1.0));
    // alpha = 1/2: Euclidean radius r^2, snowflaked diameter (2 r^2)^{1/2}
    CHECK(alpha_from_ball_analytic(Type2Desc{3, 0.5}, 1.3) == doctest::Approx(0.5));
    CHECK(alpha_monte_carlo(Type2Desc{2, 0.7}, 1.0, 10000, 5) == doctest::Approx(0.7).epsilon(0.05));
    CHECK_THROWS_AS(alpha_from_ball_analytic(Type2Desc{1, 1.0}, -1.0), std::invalid_argument);
}
