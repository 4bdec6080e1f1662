#include <doctest.h>

#include <cmath>
#include <random>

#include "dilhom/dilation.hpp"
#include "dilhom/verify.hpp"

using namespace dilhom;

namespace {

FieldPoint pt(const Space& sp, std::initializer_list<LaurentSeries> factors) {
    FieldPoint p;
    for (const auto& s : factors) p.factors.push_back(s);
    (void)sp;
    return p;
}

} // namespace

TEST_CASE("identity and monomial dilations") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    const auto& spec = f2.factors[0];
    FieldPoint one = pt(f2, {ls_constant(spec, ff_one(spec), 4)});

    DilationMap id = dil_identity(f2);
    CHECK(point_known_equal(f2, dil_apply(f2, id, one), one));
    ExactScale s = scale_of(f2, id);
    CHECK(s.geo);
    CHECK(s.k == 0);

    // u: x -> X * x
    Type1Affine u;
    u.units.push_back(ls_monomial(spec, ff_one(spec), 1, 4));
    u.shift.factors.push_back(ls_zero(spec));
    Point img = dil_apply(f2, DilationMap{u}, one);
    CHECK(point_known_equal(f2, img, pt(f2, {ls_monomial(spec, ff_one(spec), 1, 4)})));
    ExactScale su = scale_of(f2, DilationMap{u});
    CHECK(su.k == -1); // lambda of valuation 1 halves distances
    CHECK(su.value() == 0.5);
}

TEST_CASE("rotation by 90 degrees about the origin") {
    Space r2 = space_make(Type2Desc{2, 1.0});
    Type2Similarity rot;
    rot.scale = 1.0;
    rot.orthogonal = {{0.0, -1.0}, {1.0, 0.0}};
    rot.translation = {0.0, 0.0};
    auto img = std::get<RealPoint>(dil_apply(r2, DilationMap{rot}, RealPoint{{1.0, 0.0}}));
    CHECK(img.coords[0] == doctest::Approx(0.0));
    CHECK(img.coords[1] == doctest::Approx(1.0));
}

TEST_CASE("scale_of rejects mixed unit valuations and snowflakes type 2 ratios") {
    Space f6 = space_make(Type1Desc{6, 1.0, 2.0});
    Type1Affine bad;
    bad.units.push_back(ls_monomial(f6.factors[0], ff_one(f6.factors[0]), 0, 4));
    bad.units.push_back(ls_monomial(f6.factors[1], ff_one(f6.factors[1]), 1, 4));
    for (const auto& f : f6.factors) bad.shift.factors.push_back(ls_zero(f));
    CHECK_THROWS_AS(scale_of(f6, DilationMap{bad}), std::invalid_argument);

    Space r1 = space_make(Type2Desc{1, 0.5});
    Type2Similarity sc;
    sc.scale = 4.0;
    sc.orthogonal = {{1.0}};
    sc.translation = {0.0};
    CHECK(scale_of(r1, DilationMap{sc}).value() == doctest::Approx(2.0));
}

TEST_CASE("composition adds exponents and multiplies float scales") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    const auto& spec = f2.factors[0];
    auto mono = [&](std::int64_t e) {
        Type1Affine u;
        u.units.push_back(ls_monomial(spec, ff_one(spec), e, 6));
        u.shift.factors.push_back(ls_zero(spec));
        return DilationMap{u};
    };
    ExactScale s = scale_of(f2, dil_compose(f2, mono(2), mono(-3)));
    CHECK(s.geo);
    CHECK(s.k == 1);

    Space r3 = space_make(Type2Desc{3, 1.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        DilationMap u = random_dilation(r3, seed);
        DilationMap v = random_dilation(r3, seed + 100);
        double want = scale_of(r3, u).value() * scale_of(r3, v).value();
        CHECK(scale_of(r3, dil_compose(r3, u, v)).value() ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("two-point witness on the canonical examples") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    const auto& spec = f2.factors[0];
    FieldPoint a = pt(f2, {ls_zero(spec)});
    FieldPoint b = pt(f2, {ls_constant(spec, ff_one(spec), 6)});
    FieldPoint c = pt(f2, {ls_monomial(spec, ff_one(spec), 1, 6)});
    DilationMap u = two_point_witness(f2, a, b, c);
    CHECK(point_known_equal(f2, dil_apply(f2, u, a), a));
    CHECK(point_known_equal(f2, dil_apply(f2, u, b), c));
    CHECK(scale_of(f2, u).k == -1);
    CHECK_THROWS_AS(two_point_witness(f2, a, b, b), std::invalid_argument);

    Space r2 = space_make(Type2Desc{2, 1.0});
    DilationMap v = two_point_witness(r2, RealPoint{{0, 0}}, RealPoint{{1, 0}}, RealPoint{{0, 2}});
    auto img = std::get<RealPoint>(dil_apply(r2, v, RealPoint{{1, 0}}));
    CHECK(img.coords[0] == doctest::Approx(0.0));
    CHECK(img.coords[1] == doctest::Approx(2.0));
    CHECK(scale_of(r2, v).value() == doctest::Approx(2.0));
}

TEST_CASE("equal distances force scale exactly 1") {
    Space f6 = space_make(Type1Desc{6, 1.0, 2.0});
    auto pts = sample(f6, 30, 3, 21);
    for (std::int64_t i = 1; i < 30; ++i)
        for (std::int64_t j = i + 1; j < 30; ++j) {
            auto dab = distance(f6, pts[0], pts[static_cast<size_t>(i)]);
            auto dac = distance(f6, pts[0], pts[static_cast<size_t>(j)]);
            if (dab.k != dac.k) continue;
            DilationMap u = two_point_witness(f6, pts[0], pts[static_cast<size_t>(i)],
                                              pts[static_cast<size_t>(j)]);
            CHECK(scale_of(f6, u).k == 0);
            return;
        }
    FAIL("no equal-distance pair found in the sample");
}

TEST_CASE("extend_partial produces a full-sample dilation") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    auto pts = sample(f2, 12, 3, 31);
    DistanceMatrix m = distance_matrix(f2, pts);

    // identity partial on 2 points extends to an isometry
    PartialMap partial;
    partial.pairs.emplace_back(pts[0], pts[0]);
    partial.pairs.emplace_back(pts[1], pts[1]);
    Type1Composite full = extend_partial(f2, pts, partial);
    CHECK(full.scale_exponent == 0);
    REQUIRE(full.mapping.size() == 12);
    for (std::int64_t i = 0; i < 12; ++i)
        for (std::int64_t j = i + 1; j < 12; ++j) {
            ExactDistance d = distance(f2, full.mapping[static_cast<size_t>(i)].second,
                                       full.mapping[static_cast<size_t>(j)].second);
            CHECK(exact_eq(d, m.at(i, j)));
        }
}

TEST_CASE("extend_partial rejects a mismatched partial") {
    Space f2 = space_make(Type1Desc{2, 1.0, 2.0});
    auto pts = sample(f2, 12, 3, 33);
    // find indices with d(0,i) != d(0,j), then demand 0->0, i->j
    DistanceMatrix m = distance_matrix(f2, pts);
    for (std::int64_t i = 1; i < 12; ++i)
        for (std::int64_t j = 1; j < 12; ++j) {
            if (i == j || m.at(0, i).k == m.at(0, j).k) continue;
            PartialMap partial;
            partial.pairs.emplace_back(pts[0], pts[0]);
            partial.pairs.emplace_back(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
            partial.pairs.emplace_back(pts[1], pts[1]);
            CHECK_THROWS_AS(extend_partial(f2, pts, partial), std::invalid_argument);
            return;
        }
    FAIL("no mismatched pair found");
}
