#include <catch2/catch_amalgamated.hpp>

#include "equidec/io.hpp"
#include "helpers.hpp"

using namespace equidec;
using testutil::Rng;

TEST_CASE("fraction strings round-trip canonically") {
    CHECK(Rational::parse("-3/4").str() == "-3/4");
    CHECK(Rational::parse("5").str() == "5");
    CHECK(Rational::parse("2/4").str() == "1/2");
    CHECK(Rational::parse("-2/-4").str() == "1/2");
    CHECK(Rational::parse("0/7").str() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), error);
    CHECK_THROWS_AS(Rational::parse("abc"), error);

    Rng rng(701);
    for (int i = 0; i < 200; ++i) {
        Rational r(testutil::rand_range(rng, -50, 50), testutil::rand_range(rng, 1, 24));
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("polygon documents round-trip losslessly") {
    Polygon half = testutil::right_triangle(1, 2);
    PolygonDocument doc = PolygonDocument::from_polygon(half, "half");
    Json j = to_json(doc);
    PolygonDocument back = polygon_document_from_json(j);
    CHECK(back.name == "half");
    CHECK(back.vertices == half.vertices());
    CHECK(back.to_polygon().area() == half.area());
    // integer coordinates may arrive as JSON numbers too
    Json loose = Json::parse(R"({"vertices": [[0, 0], ["1", 0], [0, "1"]]})");
    CHECK(polygon_document_from_json(loose).to_polygon().area() == Rational(1, 2));
    CHECK_THROWS_AS(polygon_document_from_json(Json::parse("{}")), error);
}

TEST_CASE("relation documents round-trip and re-verify") {
    Polygon sq = testutil::unit_square();
    Verdict v = decide_equidecomposable(sq, sq);
    REQUIRE(v.outcome == Verdict::Outcome::yes);
    Json j = to_json(*v.relation);
    Relation back = relation_from_json(j);
    REQUIRE(back.pieces.size() == v.relation->pieces.size());
    CHECK(verify_relation(sq, sq, back).pass());
    CHECK(to_json(back) == j);

    // a non-unimodular matrix is rejected at parse time
    Json bad = j;
    bad["pieces"][0]["matrix"] = Json::array({Json::array({2, 0}), Json::array({0, 1})});
    CHECK_THROWS_AS(relation_from_json(bad), error);
}

TEST_CASE("quasi-polynomial and weight outputs reparse") {
    Polygon half = testutil::right_triangle(1, 2);
    Json qp = to_json(ehrhart_quasipolynomial(half));
    CHECK(qp["period"] == 2);
    REQUIRE(qp["constituents"].size() == 2);
    for (const auto& c : qp["constituents"])
        CHECK(c["coefficients"].size() == 3);

    Json w = to_json(polygon_weight(half, 2));
    CHECK(w["d"] == 2);
    long long total = 0;
    for (const auto& cls : w["classes"]) total += cls["count"].get<long long>();
    CHECK(total == 3);
}

TEST_CASE("DOT export names every class") {
    WeightClassGraph g = weight_class_graph(2);
    std::string dot = to_dot(g);
    CHECK(dot.find("graph G_2") != std::string::npos);
    CHECK(dot.find("{0,0,1}") != std::string::npos);
    CHECK(dot.find("{1,1,1}") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);
}

TEST_CASE("synthesis output is deterministic per seed") {
    Polygon sq = testutil::unit_square();
    SynthesizedPair a = synthesize_equidecomposable_pair(sq, 1, 12345);
    SynthesizedPair b = synthesize_equidecomposable_pair(sq, 1, 12345);
    CHECK(dump_json(to_json(PolygonDocument::from_polygon(a.target))) ==
          dump_json(to_json(PolygonDocument::from_polygon(b.target))));
    CHECK(dump_json(to_json(a.relation)) == dump_json(to_json(b.relation)));
    SynthesizedPair c = synthesize_equidecomposable_pair(sq, 1, 54321);
    CHECK(dump_json(to_json(a.relation)) != dump_json(to_json(c.relation)));
}

TEST_CASE("verdict JSON carries the verdict fields") {
    Polygon sq = testutil::unit_square();
    Polygon big({{Rational(0), Rational(0)},
                 {Rational(2), Rational(0)},
                 {Rational(2), Rational(2)},
                 {Rational(0), Rational(2)}});
    Json yes = to_json(decide_equidecomposable(sq, sq));
    CHECK(yes["verdict"] == "yes");
    CHECK(yes["d_prime"] == 1);
    Json no = to_json(decide_equidecomposable(sq, big));
    CHECK(no["verdict"] == "no");
    CHECK(no["failed_criterion"] == "vertex");
}
