#include <doctest.h>

#include <cmath>
#include <random>

#include "dilhom/product.hpp"

using namespace dilhom;

TEST_CASE("sup_product descriptors") {
    SupProduct p = sup_product({Type1Desc{2, 1.0, 2.0}, Type1Desc{3, 1.0, 2.0}});
    CHECK(std::get<Type1Desc>(p.combined.desc) == Type1Desc{6, 1.0, 2.0});

    SupProduct q = sup_product({Type0Desc{2, 1.0}, Type0Desc{3, 1.0}});
    CHECK(std::get<Type0Desc>(q.combined.desc) == Type0Desc{6, 1.0});

    CHECK_THROWS_AS(sup_product({Type1Desc{2, 1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(sup_product({Type1Desc{2, 1.0, 2.0}, Type1Desc{3, 1.0, 3.0}}),
                    std::invalid_argument);
}

TEST_CASE("pack transports the max metric onto the canonical space") {
    SupProduct p = sup_product({Type1Desc{2, 1.0, 2.0}, Type1Desc{3, 1.0, 2.0}});
    auto a2 = sample(p.parts[0], 40, 3, 11);
    auto a3 = sample(p.parts[1], 40, 3, 13);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<size_t> pick(0, 39);
    for (int t = 0; t < 400; ++t) {
        std::vector<Point> x{a2[pick(rng)], a3[pick(rng)]};
        std::vector<Point> y{a2[pick(rng)], a3[pick(rng)]};
        ExactDistance direct = p.direct_distance(x, y);
        ExactDistance packed = distance(p.combined, p.pack(x), p.pack(y));
        CHECK(exact_eq(direct, packed));
        // unpack inverts pack
        auto back = p.unpack(p.pack(x));
        for (size_t s = 0; s < 2; ++s) CHECK(point_known_equal(p.parts[s], back[s], x[s]));
    }
}

TEST_CASE("sup_product of discrete spaces") {
    SupProduct p = sup_product({Type0Desc{2, 1.0}, Type0Desc{3, 1.0}});
    std::vector<Point> x{DiscretePoint{1}, DiscretePoint{2}};
    std::vector<Point> y{DiscretePoint{1}, DiscretePoint{0}};
    CHECK(p.direct_distance(x, y).value() == 1.0);
    CHECK(exact_eq(p.direct_distance(x, y), distance(p.combined, p.pack(x), p.pack(y))));
    CHECK(std::get<DiscretePoint>(p.pack(x)).index == 5);
}

TEST_CASE("euclidean_product evaluator equals the snowflaked metric") {
    EuclideanProduct p = euclidean_product({Type2Desc{1, 0.5}, Type2Desc{2, 0.5}});
    CHECK(p.combined == Type2Desc{3, 0.5});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int t = 0; t < 400; ++t) {
        std::vector<double> x(3), y(3);
        for (auto& c : x) c = unif(rng);
        for (auto& c : y) c = unif(rng);
        double s = 0;
        for (int c = 0; c < 3; ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
        double want = std::pow(std::sqrt(s), 0.5);
        CHECK(p.metric(x, y) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(euclidean_product({Type2Desc{1, 1.0}, Type2Desc{1, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("probe separates the l1 plane from Euclidean geometry") {
    MetricFn l1 = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (size_t c = 0; c < x.size(); ++c) s += std::fabs(x[c] - y[c]);
        return s;
    };
    MetricFn de = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (size_t c = 0; c < x.size(); ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
        return std::sqrt(s);
    };
    auto rep_l1 = probe_product_homogeneity(l1, 2, 40, 1);
    CHECK(rep_l1.max_equidistant_clique_size >= 4);
    CHECK(rep_l1.homogeneity_violations > 0);

    auto rep_de = probe_product_homogeneity(de, 2, 40, 1);
    CHECK(rep_de.max_equidistant_clique_size == 3);
    CHECK(rep_de.homogeneity_violations == 0);

    MetricFn snow = [](const std::vector<double>& x, const std::vector<double>& y) {
        return std::sqrt(std::fabs(x[0] - y[0]));
    };
    CHECK(probe_product_homogeneity(snow, 1, 40, 1).max_equidistant_clique_size == 2);
}
