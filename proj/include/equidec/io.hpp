#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "equidec/dynamics.hpp"
#include "equidec/ehrhart.hpp"
#include "equidec/equidecompose.hpp"

namespace equidec {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalar encoding: exact fraction strings, integers as JSON numbers when
// they fit
// ---------------------------------------------------------------------------

inline Json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
        return Json(v.convert_to<int64_t>());
    return Json(v.str());
}

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    fail(errc::parse_error, "expected an integer");
}

inline Json rational_to_json(const Rational& r) { return Json(r.str()); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(BigInt(j.get<int64_t>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    fail(errc::parse_error, "expected a fraction string or integer");
}

inline Json point_to_json(const LatticePoint& p) {
    return Json::array({rational_to_json(p.x), rational_to_json(p.y)});
}

inline LatticePoint point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) fail(errc::parse_error, "expected a coordinate pair");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
}

// ---------------------------------------------------------------------------
// polygon documents
// ---------------------------------------------------------------------------

struct PolygonDocument {
    std::string name; // optional, empty when absent
    std::vector<LatticePoint> vertices;

    Polygon to_polygon() const { return Polygon(vertices); }

    static PolygonDocument from_polygon(const Polygon& p, std::string name = "") {
        return {std::move(name), p.vertices()};
    }
};

inline Json to_json(const PolygonDocument& doc) {
    Json j;
    if (!doc.name.empty()) j["name"] = doc.name;
    Json vs = Json::array();
    for (const auto& v : doc.vertices) vs.push_back(point_to_json(v));
    j["vertices"] = vs;
    return j;
}

inline PolygonDocument polygon_document_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices"))
        fail(errc::parse_error, "polygon document needs a 'vertices' array");
    PolygonDocument doc;
    if (j.contains("name")) doc.name = j["name"].get<std::string>();
    for (const auto& v : j["vertices"]) doc.vertices.push_back(point_from_json(v));
    return doc;
}

// ---------------------------------------------------------------------------
// relation documents
// ---------------------------------------------------------------------------

inline Json gmap_to_json(const GMap& g) {
    Json j;
    j["matrix"] = Json::array({Json::array({bigint_to_json(g.u.a), bigint_to_json(g.u.b)}),
                               Json::array({bigint_to_json(g.u.c), bigint_to_json(g.u.d)})});
    j["translation"] = Json::array({bigint_to_json(g.v.x), bigint_to_json(g.v.y)});
    return j;
}

inline GMap gmap_from_json(const Json& j) {
    if (!j.contains("matrix") || !j.contains("translation"))
        fail(errc::parse_error, "map needs 'matrix' and 'translation'");
    const Json& m = j["matrix"];
    const Json& t = j["translation"];
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2 ||
        !t.is_array() || t.size() != 2)
        fail(errc::parse_error, "map has wrong shape");
    return GMap(Mat2(bigint_from_json(m[0][0]), bigint_from_json(m[0][1]),
                     bigint_from_json(m[1][0]), bigint_from_json(m[1][1])),
                Vec2(bigint_from_json(t[0]), bigint_from_json(t[1])));
}

inline const char* cell_kind_name(RelationPiece::Kind k) {
    switch (k) {
        case RelationPiece::Kind::facet: return "triangle";
        case RelationPiece::Kind::edge: return "segment";
        case RelationPiece::Kind::vertex: return "point";
    }
    return "unknown";
}

inline Json to_json(const Relation& rel) {
    Json pieces = Json::array();
    for (const auto& piece : rel.pieces) {
        Json j;
        j["cell"] = cell_kind_name(piece.kind);
        Json vs = Json::array();
        for (const auto& v : piece.cell) vs.push_back(point_to_json(v));
        j["vertices"] = vs;
        Json g = gmap_to_json(piece.map);
        j["matrix"] = g["matrix"];
        j["translation"] = g["translation"];
        pieces.push_back(j);
    }
    return Json{{"pieces", pieces}};
}

inline Relation relation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("pieces"))
        fail(errc::parse_error, "relation document needs a 'pieces' array");
    Relation rel;
    for (const auto& pj : j["pieces"]) {
        RelationPiece piece;
        std::string kind = pj.at("cell").get<std::string>();
        size_t want = 0;
        if (kind == "triangle") {
            piece.kind = RelationPiece::Kind::facet;
            want = 3;
        } else if (kind == "segment") {
            piece.kind = RelationPiece::Kind::edge;
            want = 2;
        } else if (kind == "point") {
            piece.kind = RelationPiece::Kind::vertex;
            want = 1;
        } else {
            fail(errc::parse_error, "unknown cell kind '" + kind + "'");
        }
        for (const auto& v : pj.at("vertices")) piece.cell.push_back(point_from_json(v));
        if (piece.cell.size() != want) fail(errc::parse_error, "cell has wrong vertex count");
        piece.map = gmap_from_json(pj);
        rel.pieces.push_back(std::move(piece));
    }
    return rel;
}

// ---------------------------------------------------------------------------
// analysis outputs
// ---------------------------------------------------------------------------

inline Json to_json(const QuasiPolynomial& qp) {
    Json constituents = Json::array();
    BigInt d = qp.period;
    for (BigInt r = 1; r <= d; ++r) {
        const auto& c = qp.constituents[size_t(mod_norm(r, d))];
        constituents.push_back(Json{{"residue", bigint_to_json(r)},
                                    {"coefficients", Json::array({rational_to_json(c[0]),
                                                                  rational_to_json(c[1]),
                                                                  rational_to_json(c[2])})}});
    }
    return Json{{"period", bigint_to_json(qp.period)}, {"constituents", constituents}};
}

inline Json to_json(const PrimitiveCensus& census) {
    Json counts = Json::array();
    for (const auto& [n, c] : census.counts)
        counts.push_back(Json{{"level", bigint_to_json(n)}, {"count", bigint_to_json(c)}});
    return Json{{"census", counts}};
}

inline Json to_json(const PolygonWeight& w) {
    Json classes = Json::array();
    for (const auto& [cls, count] : w.counts) {
        Json cj;
        cj["i"] = bigint_to_json(cls.i);
        cj["k"] = bigint_to_json(cls.canonical.k);
        cj["offset"] = bigint_to_json(cls.canonical.offset);
        cj["representative"] = Json::array(
            {point_to_json(cls.canonical.rep.from), point_to_json(cls.canonical.rep.to)});
        cj["count"] = count;
        classes.push_back(cj);
    }
    return Json{{"d", bigint_to_json(w.d)}, {"classes", classes}};
}

inline Json to_json(const WeightTriple& t) {
    return Json::array({bigint_to_json(t.r[0]), bigint_to_json(t.r[1]), bigint_to_json(t.r[2])});
}

inline std::string triple_label(const WeightTriple& t) {
    return "{" + t.r[0].str() + "," + t.r[1].str() + "," + t.r[2].str() + "}";
}

inline Json to_json(const VerifyReport& rep) {
    Json failures = Json::array();
    for (const auto& f : rep.failures)
        failures.push_back(Json{{"code", verify_code_name(f.code)}, {"detail", f.detail}});
    return Json{{"pass", rep.pass()}, {"failures", failures}};
}

inline Json to_json(const Verdict& v) {
    Json j;
    switch (v.outcome) {
        case Verdict::Outcome::yes: j["verdict"] = "yes"; break;
        case Verdict::Outcome::no: j["verdict"] = "no"; break;
        case Verdict::Outcome::inconclusive: j["verdict"] = "inconclusive"; break;
    }
    if (v.outcome == Verdict::Outcome::yes) j["d_prime"] = bigint_to_json(v.d_prime);
    if (v.failed == Verdict::Criterion::vertex) j["failed_criterion"] = "vertex";
    if (v.failed == Verdict::Criterion::edge) j["failed_criterion"] = "edge";
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

/// GraphViz rendering of G_d: one node per weight class, flippable classes
/// joined by edges labeled with the resulting pair.
inline std::string to_dot(const WeightClassGraph& g) {
    std::ostringstream os;
    os << "graph G_" << g.d.str() << " {\n";
    os << "  label=\"G_" << g.d.str() << "\";\n";
    for (size_t i = 0; i < g.vertices.size(); ++i)
        os << "  n" << i << " [label=\"" << triple_label(g.vertices[i]) << "\"];\n";
    for (const auto& e : g.edges)
        os << "  n" << e.a << " -- n" << e.b << " [label=\"" << triple_label(e.result.first)
           << "," << triple_label(e.result.second) << "\"];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// file helpers
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot write '" + path + "'");
    out << text;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Polygon load_polygon(const std::string& path) {
    return polygon_document_from_json(read_json_file(path)).to_polygon();
}

} // namespace equidec
