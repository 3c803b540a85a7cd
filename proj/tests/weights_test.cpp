#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace equidec;
using testutil::Rng;

namespace {
const LatticePoint O{Rational(0), Rational(0)};
}

TEST_CASE("edge_weight examples") {
    CHECK(edge_weight({O, {Rational(1, 3), Rational(0)}}, 3).value == 0);
    CHECK(edge_weight({{Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(0)}}, 3).value == 0);
    CHECK(edge_weight({{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)}}, 2).value == 1);
    CHECK_THROWS_AS(edge_weight({O, {Rational(2, 3), Rational(0)}}, 3), error);
}

TEST_CASE("reversing orientation negates the weight") {
    Rng rng(201);
    for (int i = 0; i < 200; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        Residue w = edge_weight(e, d);
        Residue wr = edge_weight(e.reversed(), d);
        CHECK(mod_norm(w.value + wr.value, d) == 0);
    }
}

TEST_CASE("weight transforms by the determinant sign") {
    Rng rng(202);
    for (int i = 0; i < 300; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        GMap g = testutil::random_gmap(rng);
        Residue w = edge_weight(e, d);
        Residue wg = edge_weight(gmap_apply(g, e), d);
        if (g.det() == 1)
            CHECK(wg.value == w.value);
        else
            CHECK(mod_norm(wg.value + w.value, d) == 0);
    }
}

TEST_CASE("triangle_weight examples") {
    for (long long d = 1; d <= 6; ++d) {
        Triangle t(O, {Rational(1, d), Rational(0)}, {Rational(0), Rational(1, d)});
        CHECK(triangle_weight(t, d) == WeightTriple(0, 0, 1, d));
    }
    Triangle t2({Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)},
                {Rational(1, 2), Rational(1, 2)});
    CHECK(triangle_weight(t2, 2) == WeightTriple(1, 1, 1, 2));
    // any unimodular lattice triangle at d = 1
    Triangle t3({Rational(2), Rational(3)}, {Rational(3), Rational(3)}, {Rational(5), Rational(4)});
    CHECK(triangle_weight(t3, 1) == WeightTriple(0, 0, 0, 1));
    CHECK_THROWS_AS(triangle_weight(Triangle(O, {Rational(1), Rational(0)},
                                             {Rational(0), Rational(1)}), 2),
                    error);
}

TEST_CASE("triangle weights sum to 1 mod d and are G-invariant") {
    Rng rng(203);
    for (int i = 0; i < 500; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        Triangle t = testutil::random_minimal_triangle(rng, d);
        WeightTriple w = triangle_weight(t, d); // constructor checks the sum
        GMap g = testutil::random_gmap(rng);
        CHECK(triangle_weight(gmap_apply(g, t), d) == w);
    }
}

TEST_CASE("coprime_shift examples and validation") {
    CHECK(coprime_shift(1, 7, 5) == 0);
    BigInt q = coprime_shift(2, 4, 3);
    CHECK(q == 1);
    CHECK(big_gcd(BigInt(2) + q * 3, BigInt(4)) == 1);
    CHECK(coprime_shift(3, 5, 4) == 0);
    CHECK_THROWS_AS(coprime_shift(2, 4, 2), error); // gcd(gcd(2,4),2) = 2
}

TEST_CASE("coprime_shift fuzz") {
    Rng rng(204);
    for (int i = 0; i < 500; ++i) {
        BigInt a = testutil::rand_range(rng, -40, 40);
        BigInt b = testutil::rand_range(rng, -40, 40);
        BigInt d = testutil::rand_range(rng, 1, 12);
        if (big_gcd(big_gcd(big_abs(a), big_abs(b)), d) != 1) continue;
        if (b == 0 && mod_norm(a - 1, d) != 0 && mod_norm(a + 1, d) != 0) continue;
        BigInt q = coprime_shift(a, b, d);
        CHECK(big_gcd(big_abs(a + q * d), big_abs(b)) == 1);
    }
}

TEST_CASE("lift_unimodular_mod_d examples") {
    for (long long d : {2, 3, 5, 8}) {
        CHECK(lift_unimodular_mod_d(Mat2::identity(), d) == Mat2::identity());
        Mat2 swap(0, 1, 1, 0);
        CHECK(lift_unimodular_mod_d(swap, 5) == swap);
        Mat2 m(1, 0, 0, d - 1);
        Mat2 l = lift_unimodular_mod_d(m, d);
        CHECK((l.det() == 1 || l.det() == -1));
        CHECK(mod_norm(l.a - m.a, d) == 0);
        CHECK(mod_norm(l.b - m.b, d) == 0);
        CHECK(mod_norm(l.c - m.c, d) == 0);
        CHECK(mod_norm(l.d - m.d, d) == 0);
    }
    CHECK_THROWS_AS(lift_unimodular_mod_d(Mat2(2, 0, 0, 1), 5), error);
}

TEST_CASE("lift_unimodular_mod_d fuzz over matrices invertible mod d") {
    Rng rng(205);
    for (int i = 0; i < 400; ++i) {
        long long d = testutil::rand_range(rng, 1, 12);
        Mat2 u = testutil::random_unimodular(rng);
        // random representative of the residue class of a unimodular matrix
        Mat2 m(u.a + d * testutil::rand_range(rng, -3, 3), u.b + d * testutil::rand_range(rng, -3, 3),
               u.c + d * testutil::rand_range(rng, -3, 3), u.d + d * testutil::rand_range(rng, -3, 3));
        Mat2 l = lift_unimodular_mod_d(m, d);
        CHECK((l.det() == 1 || l.det() == -1));
        CHECK(mod_norm(l.a - m.a, d) == 0);
        CHECK(mod_norm(l.b - m.b, d) == 0);
        CHECK(mod_norm(l.c - m.c, d) == 0);
        CHECK(mod_norm(l.d - m.d, d) == 0);
    }
}

TEST_CASE("map_primitive_segments examples") {
    // E = F admits a map fixing the endpoints
    OrientedSegment e({Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(1, 3)});
    GMap g0 = map_primitive_segments(e, e, 3);
    CHECK(gmap_apply(g0, e.from) == e.from);
    CHECK(gmap_apply(g0, e.to) == e.to);

    OrientedSegment e1(O, {Rational(1, 2), Rational(1, 2)});
    OrientedSegment f1(O, {Rational(1, 2), Rational(0)});
    GMap g = map_primitive_segments(e1, f1, 2);
    CHECK(gmap_apply(g, e1.from) == f1.from);
    CHECK(gmap_apply(g, e1.to) == f1.to);

    // a primitive segment can be mapped onto itself with reversed endpoints
    OrientedSegment p({Rational(1, 5), Rational(0)}, {Rational(1, 5), Rational(1, 5)});
    REQUIRE(is_primitive_segment(p, 5));
    GMap rev = map_primitive_segments(p, p.reversed(), 5);
    CHECK(gmap_apply(rev, p.from) == p.to);
    CHECK(gmap_apply(rev, p.to) == p.from);

    // weight mismatch between units
    OrientedSegment a({Rational(1, 5), Rational(0)}, {Rational(2, 5), Rational(1, 5)});
    OrientedSegment b({Rational(2, 5), Rational(0)}, {Rational(4, 5), Rational(1, 5)});
    Residue wa = edge_weight(a, 5), wb = edge_weight(b, 5);
    REQUIRE(wa.value != wb.value);
    REQUIRE(mod_norm(wa.value + wb.value, 5) != 0);
    CHECK_THROWS_AS(map_primitive_segments(a, b, 5), error);
}

TEST_CASE("map_primitive_segments on random primitive pairs") {
    Rng rng(206);
    int done = 0;
    while (done < 200) {
        long long d = testutil::rand_range(rng, 1, 8);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        if (!is_primitive_segment(e, d)) continue;
        GMap h = testutil::random_gmap(rng);
        OrientedSegment f = gmap_apply(h, e);
        GMap g = map_primitive_segments(e, f, d);
        CHECK(gmap_apply(g, e.from) == f.from);
        CHECK(gmap_apply(g, e.to) == f.to);
        ++done;
    }
}

TEST_CASE("primitive_hull examples") {
    auto [h1, k1] = primitive_hull({O, {Rational(1, 3), Rational(0)}}, 3);
    CHECK(k1 == 1);
    CHECK(h1.same_set({O, {Rational(1), Rational(0)}}));

    OrientedSegment prim({Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)});
    auto [h2, k2] = primitive_hull(prim, 2);
    CHECK(k2 == 2);
    CHECK(h2.same_set(prim));

    auto [h3, k3] = primitive_hull({{Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(0)}}, 3);
    CHECK(k3 == 1);
    CHECK(h3.same_set({O, {Rational(1), Rational(0)}}));
}

TEST_CASE("primitive hull level matches the weight gcd") {
    Rng rng(207);
    for (int i = 0; i < 300; ++i) {
        long long d = testutil::rand_range(rng, 1, 10);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        auto [hull, k] = primitive_hull(e, d);
        CHECK(is_primitive_segment(hull, k));
        CHECK(d % k == 0);
        BigInt w = edge_weight(e, d).value;
        CHECK(d / k == big_gcd(w, d));
    }
}

TEST_CASE("canonical forms of the three collinear 3-minimal edges") {
    OrientedSegment e1(O, {Rational(1, 3), Rational(0)});
    OrientedSegment e2({Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(0)});
    OrientedSegment e3({Rational(2, 3), Rational(0)}, {Rational(1), Rational(0)});
    CanonicalEdge c1 = canonical_edge_form(e1, 3);
    CanonicalEdge c2 = canonical_edge_form(e2, 3);
    CanonicalEdge c3 = canonical_edge_form(e3, 3);
    CHECK(c1 == c3);
    CHECK_FALSE(c1 == c2);
    // the outer edges touch an integer point, the middle one does not
    CHECK(c1.offset == 0);
    CHECK(c2.offset == 1);
}

TEST_CASE("an edge already in canonical position is its own representative") {
    OrientedSegment e(O, {Rational(1, 3), Rational(0)});
    CanonicalEdge c = canonical_edge_form(e, 3);
    CHECK(c.rep.same_set(e));
}

TEST_CASE("canonical edge form is a G-invariant") {
    Rng rng(208);
    for (int i = 0; i < 200; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        GMap g = testutil::random_gmap(rng);
        CHECK(canonical_edge_form(e, d) == canonical_edge_form(gmap_apply(g, e), d));
    }
}

TEST_CASE("distinct canonical forms admit no bounded G-map") {
    Rng rng(209);
    int done = 0;
    while (done < 12) {
        long long d = testutil::rand_range(rng, 2, 5);
        OrientedSegment e = testutil::random_minimal_segment(rng, d, 2);
        OrientedSegment f = testutil::random_minimal_segment(rng, d, 2);
        if (canonical_edge_form(e, d) == canonical_edge_form(f, d)) continue;
        CHECK_FALSE(testutil::bounded_segment_map_exists(e, f, 10));
        ++done;
    }
}

TEST_CASE("equal canonical form gives an explicit edge map") {
    Rng rng(210);
    int done = 0;
    while (done < 100) {
        long long d = testutil::rand_range(rng, 1, 8);
        OrientedSegment e = testutil::random_minimal_segment(rng, d);
        GMap h = testutil::random_gmap(rng);
        OrientedSegment f = gmap_apply(h, e);
        GMap g = map_equal_weight_edges(e, f, d);
        CHECK(gmap_apply(g, e).same_set(f));
        ++done;
    }
}

TEST_CASE("map_equal_weight_edges examples and error path") {
    // E = F admits a map fixing the edge setwise
    OrientedSegment e0({Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(1, 3)});
    GMap self = map_equal_weight_edges(e0, e0, 3);
    CHECK(gmap_apply(self, e0).same_set(e0));

    // the two weight-0 legs of the half right triangle at d = 2
    OrientedSegment leg1(O, {Rational(1, 2), Rational(0)});
    OrientedSegment leg2({Rational(0), Rational(1, 2)}, O);
    GMap g = map_equal_weight_edges(leg1, leg2, 2);
    CHECK(gmap_apply(g, leg1).same_set(leg2));

    OrientedSegment e1(O, {Rational(1, 3), Rational(0)});
    OrientedSegment e2({Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(0)});
    CHECK_THROWS_AS(map_equal_weight_edges(e1, e2, 3), error);
}

TEST_CASE("polygon_weight examples") {
    PolygonWeight sq = polygon_weight(testutil::unit_square(), 1);
    REQUIRE(sq.counts.size() == 1);
    CHECK(sq.counts.begin()->second == 4);
    CHECK(sq.counts.begin()->first.i == 0);

    PolygonWeight tri = polygon_weight(testutil::right_triangle(1, 2), 2);
    REQUIRE(tri.counts.size() == 2);
    std::vector<std::pair<BigInt, long long>> got;
    for (const auto& [cls, count] : tri.counts) got.emplace_back(cls.i, count);
    CHECK(got[0] == std::make_pair(BigInt(0), 2LL)); // the two legs
    CHECK(got[1] == std::make_pair(BigInt(1), 1LL)); // the hypotenuse

    CHECK_THROWS_AS(polygon_weight(testutil::right_triangle(1, 2), 3), error);
}

TEST_CASE("polygon Weight is invariant under G-maps") {
    Rng rng(211);
    for (int i = 0; i < 60; ++i) {
        long long den = testutil::rand_range(rng, 1, 3);
        Polygon p = testutil::random_polygon(rng, den);
        long long d = den * testutil::rand_range(rng, 1, 3);
        GMap g = testutil::random_gmap(rng);
        CHECK(polygon_weight(p, d) == polygon_weight(gmap_apply(g, p), d));
    }
}

TEST_CASE("Weight at level d and at a multiple decide equality together") {
    Rng rng(212);
    for (int i = 0; i < 40; ++i) {
        long long den = testutil::rand_range(rng, 1, 3);
        Polygon p = testutil::random_polygon(rng, den);
        Polygon q1 = gmap_apply(testutil::random_gmap(rng), p); // equal Weight pair
        Polygon q2 = testutil::random_polygon(rng, den);        // usually different
        long long dp = den * testutil::rand_range(rng, 2, 4);
        for (const Polygon* q : {&q1, &q2}) {
            bool at_d = polygon_weight(p, den) == polygon_weight(*q, den);
            bool at_dp = polygon_weight(p, dp) == polygon_weight(*q, dp);
            CHECK(at_d == at_dp);
        }
    }
}

TEST_CASE("triangle_map constructs explicit equivalences") {
    Rng rng(213);
    for (int i = 0; i < 150; ++i) {
        long long d = testutil::rand_range(rng, 1, 8);
        Triangle s = testutil::random_minimal_triangle(rng, d);
        Triangle t = gmap_apply(testutil::random_gmap(rng), s);
        GMap g = triangle_map(s, t, d);
        CHECK(gmap_apply(g, s) == t);
    }
    // different weight classes cannot be mapped
    Triangle a(O, {Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)});
    Triangle b({Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)},
               {Rational(1, 2), Rational(1, 2)});
    REQUIRE(triangle_weight(a, 2) != triangle_weight(b, 2));
    CHECK_THROWS_AS(triangle_map(a, b, 2), error);
}
