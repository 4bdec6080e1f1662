#include <doctest.h>

#include "dilhom/json_io.hpp"

using namespace dilhom;

TEST_CASE("field and series round trip bit-exactly") {
    auto f9 = field_make(3, 2);
    CHECK(field_from_json(field_to_json(f9)) == f9);

    auto s = ls_random(f9, -3, 3, 7, 99);
    auto back = series_from_json(f9, series_to_json(s));
    CHECK(back.v0 == s.v0);
    CHECK(back.coeffs == s.coeffs);
    CHECK(back.zero_flag == s.zero_flag);
    CHECK(back.entire == s.entire);

    auto inv = ls_inv(s, 5); // non-entire: the flag must survive
    CHECK(series_from_json(f9, series_to_json(inv)).entire == inv.entire);
}

TEST_CASE("descriptors, points and addresses round trip") {
    for (SpaceDescriptor d : std::initializer_list<SpaceDescriptor>{
             Type0Desc{4, 0.25}, Type1Desc{12, 1.5, 3.0}, Type2Desc{3, 0.5}}) {
        SpaceDescriptor back = descriptor_from_json(descriptor_to_json(d));
        CHECK(back == d);
    }
    CHECK_THROWS_AS(descriptor_from_json(json{{"type", 1}, {"params", {{"n", 6}, {"a", 2.0}, {"b", 2.0}}}}),
                    std::invalid_argument);

    Space f6 = space_make(Type1Desc{6, 1.0, 2.0});
    for (const auto& p : sample(f6, 10, 3, 5)) {
        Point back = point_from_json(f6, point_to_json(f6, p));
        CHECK(point_known_equal(f6, back, p));
    }

    Address a;
    CHECK(address_from_json(address_to_json(a)) == a);
    a.empty = false;
    a.mu0 = -2;
    a.tail = {1, 3, 2};
    CHECK(address_from_json(address_to_json(a)) == a);
}

TEST_CASE("dilations round trip through JSON") {
    Space f6 = space_make(Type1Desc{6, 1.0, 2.0});
    auto pts = sample(f6, 8, 2, 3);
    DilationMap u = two_point_witness(f6, pts[0], pts[1], pts[2], pts);
    DilationMap back = dilation_from_json(f6, dilation_to_json(f6, u));
    for (const auto& p : pts) {
        Point lhs, rhs;
        bool ldom = true, rdom = true;
        try {
            lhs = dil_apply(f6, u, p);
        } catch (const domain_error&) {
            ldom = false;
        }
        try {
            rhs = dil_apply(f6, back, p);
        } catch (const domain_error&) {
            rdom = false;
        }
        CHECK(ldom == rdom);
        if (ldom && rdom) CHECK(point_known_equal(f6, lhs, rhs));
    }
}

TEST_CASE("distance matrix CSV with exact sidecar") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    auto pts = sample(f2, 20, 3, 8);
    DistanceMatrix m = distance_matrix(f2, pts);

    DistanceMatrix back = distmat_from_csv(distmat_to_csv(m));
    REQUIRE(back.n_points == m.n_points);
    for (std::int64_t i = 0; i < m.n_points; ++i)
        for (std::int64_t j = 0; j < m.n_points; ++j)
            CHECK(back.at(i, j).value() == doctest::Approx(m.at(i, j).value()).epsilon(1e-15));

    distmat_apply_sidecar(back, distmat_sidecar(m));
    for (std::int64_t i = 0; i < m.n_points; ++i)
        for (std::int64_t j = 0; j < m.n_points; ++j) CHECK(exact_eq(back.at(i, j), m.at(i, j)));

    CHECK_THROWS_AS(distmat_from_csv("p0,p1\n0,1\n2,0\n"), std::invalid_argument);
}
