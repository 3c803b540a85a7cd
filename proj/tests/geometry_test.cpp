#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace equidec;
using testutil::Rng;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational r(2, 4);
    CHECK(r.num() == 1);
    CHECK(r.den() == 2);
    CHECK(Rational(-6, -8) == Rational(3, 4));
    CHECK(Rational(3, -4) == Rational(-3, 4));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK_THROWS_AS(Rational(1, 0), error);
}

TEST_CASE("gmap_apply examples") {
    LatticePoint p{Rational(1, 2), Rational(1, 3)};
    CHECK(gmap_apply(GMap::identity(), p) == p);

    GMap swap(Mat2(0, 1, 1, 0), Vec2());
    LatticePoint q{Rational(1, 3), Rational(0)};
    CHECK(gmap_apply(swap, q) == LatticePoint{Rational(0), Rational(1, 3)});

    GMap shear(Mat2(1, 1, 0, 1), Vec2(1, 0));
    LatticePoint h{Rational(1, 2), Rational(1, 2)};
    CHECK(gmap_apply(shear, h) == LatticePoint{Rational(2), Rational(1, 2)});
}

TEST_CASE("gmap compose and invert examples") {
    Rng rng(101);
    GMap g = testutil::random_gmap(rng);
    GMap cg = gmap_compose(GMap::identity(), g);
    CHECK(cg == g);
    CHECK(gmap_invert(GMap::identity()).is_identity());
    GMap shear(Mat2(1, 1, 0, 1), Vec2());
    CHECK(gmap_invert(shear).u == Mat2(1, -1, 0, 1));
    CHECK_THROWS_AS(GMap(Mat2(2, 0, 0, 1), Vec2()), error);
}

TEST_CASE("gmap algebra satisfies group laws on random samples") {
    Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        GMap g1 = testutil::random_gmap(rng);
        GMap g2 = testutil::random_gmap(rng);
        GMap g3 = testutil::random_gmap(rng);
        LatticePoint p = testutil::random_lattice_point(rng, testutil::rand_range(rng, 1, 6));
        CHECK(gmap_apply(gmap_compose(g1, g2), p) == gmap_apply(g1, gmap_apply(g2, p)));
        CHECK(gmap_apply(gmap_compose(gmap_compose(g1, g2), g3), p) ==
              gmap_apply(gmap_compose(g1, gmap_compose(g2, g3)), p));
        CHECK(gmap_apply(gmap_invert(g1), gmap_apply(g1, p)) == p);
    }
}

TEST_CASE("primitivity_level examples") {
    CHECK(primitivity_level({Rational(0), Rational(0)}) == 1);
    CHECK(primitivity_level({Rational(1, 2), Rational(1, 3)}) == 6);
    CHECK(primitivity_level({Rational(2, 4), Rational(0)}) == 2);
}

TEST_CASE("primitivity level is a G-invariant") {
    Rng rng(103);
    for (int i = 0; i < 1000; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        LatticePoint p = testutil::random_lattice_point(rng, d);
        GMap g = testutil::random_gmap(rng);
        CHECK(primitivity_level(gmap_apply(g, p)) == primitivity_level(p));
    }
}

TEST_CASE("point_location examples") {
    Polygon sq = testutil::unit_square();
    CHECK(sq.locate({Rational(1, 2), Rational(1, 2)}) == Location::Interior);
    CHECK(sq.locate({Rational(0), Rational(1, 2)}) == Location::Boundary);
    CHECK(sq.locate({Rational(2), Rational(0)}) == Location::Outside);
}

TEST_CASE("point_location on a non-convex polygon") {
    // L-shaped hexagon
    Polygon l({{Rational(0), Rational(0)},
               {Rational(2), Rational(0)},
               {Rational(2), Rational(1)},
               {Rational(1), Rational(1)},
               {Rational(1), Rational(2)},
               {Rational(0), Rational(2)}});
    CHECK(l.locate({Rational(3, 2), Rational(3, 2)}) == Location::Outside);
    CHECK(l.locate({Rational(1, 2), Rational(3, 2)}) == Location::Interior);
    CHECK(l.locate({Rational(1), Rational(3, 2)}) == Location::Boundary);
}

TEST_CASE("is_minimal_segment examples") {
    LatticePoint o{Rational(0), Rational(0)};
    CHECK(is_minimal_segment({o, {Rational(1, 3), Rational(0)}}, 3));
    CHECK_FALSE(is_minimal_segment({o, {Rational(2, 3), Rational(0)}}, 3));
    CHECK(is_minimal_segment({o, {Rational(1), Rational(1)}}, 1));
}

TEST_CASE("is_minimal_triangle examples") {
    Triangle small({Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)},
                   {Rational(0), Rational(1, 2)});
    CHECK(is_minimal_triangle(small, 2));
    Triangle big({Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)});
    CHECK_FALSE(is_minimal_triangle(big, 2));
    CHECK(is_minimal_triangle(big, 1));
}

TEST_CASE("minimality is preserved under G-maps") {
    Rng rng(104);
    for (int i = 0; i < 300; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        GMap g = testutil::random_gmap(rng);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        CHECK(is_minimal_segment(gmap_apply(g, e), d));
        Triangle t = testutil::random_minimal_triangle(rng, d);
        CHECK(is_minimal_triangle(gmap_apply(g, t), d));
    }
}

TEST_CASE("polygon area is positive and G-invariant") {
    Rng rng(105);
    for (int i = 0; i < 100; ++i) {
        long long den = testutil::rand_range(rng, 1, 4);
        Polygon p = testutil::random_polygon(rng, den);
        CHECK(p.area().sign() > 0);
        GMap g = testutil::random_gmap(rng);
        CHECK(gmap_apply(g, p).area() == p.area());
    }
}

TEST_CASE("polygon constructor normalizes orientation and rejects bad input") {
    // clockwise input is reversed
    Polygon cw({{Rational(0), Rational(0)},
                {Rational(0), Rational(1)},
                {Rational(1), Rational(1)},
                {Rational(1), Rational(0)}});
    CHECK(cw.area() == Rational(1));
    CHECK(shoelace(cw.vertices()) == Rational(1));

    // self-intersecting bowtie
    CHECK_THROWS_AS(Polygon({{Rational(0), Rational(0)},
                             {Rational(1), Rational(1)},
                             {Rational(1), Rational(0)},
                             {Rational(0), Rational(1)}}),
                    error);
    // degenerate
    CHECK_THROWS_AS(Polygon({{Rational(0), Rational(0)},
                             {Rational(1), Rational(0)},
                             {Rational(2), Rational(0)}}),
                    error);
    // repeated vertex
    CHECK_THROWS_AS(Polygon({{Rational(0), Rational(0)},
                             {Rational(1), Rational(0)},
                             {Rational(1), Rational(0)},
                             {Rational(0), Rational(1)}}),
                    error);
    CHECK_THROWS_AS(Polygon({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}), error);
}

TEST_CASE("degenerate triangles are rejected") {
    CHECK_THROWS_AS(Triangle({Rational(0), Rational(0)}, {Rational(1), Rational(0)},
                             {Rational(2), Rational(0)}),
                    error);
}

TEST_CASE("polygon denominator is the least D with integral scaled vertices") {
    Polygon half = testutil::right_triangle(1, 2);
    CHECK(half.denominator() == 2);
    CHECK(testutil::unit_square().denominator() == 1);
    Polygon mixed({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)},
                   {Rational(1, 3), Rational(1, 3)}});
    CHECK(mixed.denominator() == 6);
}

TEST_CASE("minimal_chain subdivides a side at its lattice points") {
    auto chain = minimal_chain({Rational(0), Rational(0)}, {Rational(1), Rational(0)}, 3);
    REQUIRE(chain.size() == 4);
    CHECK(chain[1] == LatticePoint{Rational(1, 3), Rational(0)});
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        CHECK(is_minimal_segment({chain[i], chain[i + 1]}, 3));
}
