#include <doctest.h>

#include "dilhom/coding.hpp"

using namespace dilhom;

namespace {

Address addr(std::int64_t mu0, std::vector<int> tail) {
    Address a;
    a.empty = false;
    a.mu0 = mu0;
    a.tail = std::move(tail);
    return a;
}

} // namespace

TEST_CASE("eta finds the first differing index") {
    CHECK(address_eta(addr(0, {1, 2}), addr(1, {1, 2})) == 0);
    CHECK(address_eta(addr(0, {1, 1}), addr(0, {1, 2})) == 2);
    CHECK_THROWS_AS(address_eta(addr(0, {1}), addr(0, {1})), precision_exhausted);
}

TEST_CASE("the address ultrametric D") {
    CHECK(address_distance(addr(0, {1}), addr(0, {1}), 1, 2).is_zero());

    // one empty address: D = a * b^{mu0}
    ExactDistance d = address_distance(addr(2, {1}), Address{}, 1.5, 3.0);
    CHECK(d.kind == ExactDistance::Kind::Geo);
    CHECK(d.k == 2);
    CHECK(d.value() == 1.5 * 9.0);

    // eta = 0: exponent max(mu0, nu0)
    d = address_distance(addr(2, {1}), addr(-1, {1}), 1, 2);
    CHECK(d.k == 2);

    // eta = 3: exponent mu0 - eta + 1
    d = address_distance(addr(0, {1, 1, 1}), addr(0, {1, 1, 2}), 1, 2);
    CHECK(d.k == -2);
    CHECK(d.value() == 0.25);
}

TEST_CASE("D is an ultrametric over generated addresses") {
    std::vector<Address> addrs{Address{}};
    for (std::int64_t mu0 = -2; mu0 <= 2; ++mu0)
        for (int t1 = 1; t1 <= 3; ++t1)
            for (int t2 = 1; t2 <= 4; ++t2) addrs.push_back(addr(mu0, {t1, t2}));
    REQUIRE(addrs.size() <= 200);
    auto D = [&](size_t i, size_t j) { return address_distance(addrs[i], addrs[j], 1, 2); };
    for (size_t i = 0; i < addrs.size(); ++i)
        for (size_t j = i + 1; j < addrs.size(); ++j)
            for (size_t k = j + 1; k < addrs.size(); ++k) {
                CHECK(exact_cmp(D(i, k), exact_max(D(i, j), D(j, k))) <= 0);
                CHECK(exact_cmp(D(i, j), exact_max(D(i, k), D(j, k))) <= 0);
            }
}

TEST_CASE("ball tree over a 3-point sample of F_{2,1,2}") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    const auto& spec = f2.factors[0];
    std::vector<Point> pts{FieldPoint{{ls_zero(spec)}},
                           FieldPoint{{ls_constant(spec, ff_one(spec))}},
                           FieldPoint{{ls_monomial(spec, ff_one(spec), 1)}}};
    DistanceMatrix m = distance_matrix(f2, pts);
    BallTree tree = build_ball_tree(m, 0);
    // d(0,1) = 1 and d(0,X) = 1/2: two top spheres
    REQUIRE(tree.spheres.size() == 2);
    CHECK(tree.spheres[0].level == 0);
    CHECK(tree.spheres[1].level == -1);

    auto addrs = encode_points(tree);
    CHECK(addrs[0].empty);
    CHECK(verify_coding(m, addrs, 1, 2).ok());
}

TEST_CASE("encode_points reproduces every distance on a random sample") {
    Space f6 = space_make(Type1Desc{6, 1.5, 3.0});
    auto pts = sample(f6, 120, 3, 9);
    DistanceMatrix m = distance_matrix(f6, pts);
    auto addrs = encode_points(build_ball_tree(m, 0));
    CodingReport rep = verify_coding(m, addrs, 1.5, 3.0);
    CHECK(rep.pairs_checked == 120 * 119 / 2);
    CHECK(rep.ok());

    // a corrupted branch digit must be caught
    for (auto& a : addrs)
        if (!a.empty && !a.tail.empty()) {
            a.tail.back() = a.tail.back() == 1 ? 2 : 1;
            break;
        }
    CHECK(!verify_coding(m, addrs, 1.5, 3.0).ok());
}

TEST_CASE("non-ultrametric input is rejected with the triple named") {
    DistanceMatrix m;
    m.n_points = 3;
    m.entries.assign(9, ExactDistance::zero());
    auto set = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
        m.at(i, j) = ExactDistance::geo(1, 2, k);
        m.at(j, i) = m.at(i, j);
    };
    set(0, 1, 0);
    set(1, 2, 0);
    set(0, 2, 3); // violates d(0,2) <= max(d(0,1), d(1,2))
    CHECK_THROWS_AS(build_ball_tree(m, 0), invariant_violation);
}

TEST_CASE("canonical coding round trip") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    const auto& spec = f2.factors[0];

    CHECK(canonical_encode(f2, FieldPoint{{ls_zero(spec)}}, 3).empty);

    Address one = canonical_encode(f2, FieldPoint{{ls_constant(spec, ff_one(spec), 4)}}, 3);
    CHECK(!one.empty);
    CHECK(one.mu0 == 0);
    REQUIRE(!one.tail.empty());
    CHECK(one.tail[0] == 1);

    for (auto n : {std::int64_t{2}, std::int64_t{6}}) {
        Space sp = space_make(Type1Desc{n, 1.0, 2.0});
        auto pts = sample(sp, 100, 3, 17);
        for (const auto& p : pts) {
            Address a = canonical_encode(sp, p, 6);
            Point q = canonical_decode(sp, a, 6);
            Address a2 = canonical_encode(sp, q, 6);
            CHECK(a == a2);
        }
        // d(x, y) = D(enc x, enc y) on all pairs
        DistanceMatrix m = distance_matrix(sp, pts);
        std::vector<Address> addrs;
        for (const auto& p : pts) addrs.push_back(canonical_encode(sp, p, 12));
        for (std::int64_t i = 0; i < m.n_points; ++i)
            for (std::int64_t j = i + 1; j < m.n_points; ++j)
                CHECK(exact_eq(m.at(i, j), address_distance(addrs[static_cast<size_t>(i)],
                                                            addrs[static_cast<size_t>(j)], 1, 2)));
    }
}
