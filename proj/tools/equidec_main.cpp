// Command-line interface for the discrete equidecomposability library.
//
// Subcommands operate on polygon documents (JSON with exact fraction
// coordinates) and relation documents. Machine-readable JSON goes to
// stdout, human-readable summaries to stderr.
//
// Exit codes: 0 success / Yes, 1 No (or failed verification),
// 2 Inconclusive, 3 usage or parse error, 4 internal error.

#include <CLI11.hpp>

#include <iostream>

#include "equidec/io.hpp"

using namespace equidec;

namespace {

int run(int argc, char** argv) {
    CLI::App app{"exact decision procedure and toolbox for rational discrete equidecomposability"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for lattice counting")
        ->capture_default_str();

    // ehrhart
    std::string ehr_poly;
    auto* cmd_ehr = app.add_subcommand("ehrhart", "Ehrhart quasi-polynomial of a polygon");
    cmd_ehr->add_option("polygon", ehr_poly, "polygon document")->required();

    // census
    std::string cen_poly;
    int64_t cen_max = 6;
    auto* cmd_cen = app.add_subcommand("census", "primitive point census |P ∩ S_n|");
    cmd_cen->add_option("polygon", cen_poly, "polygon document")->required();
    cmd_cen->add_option("--max-n", cen_max, "largest level to report")->capture_default_str();

    // weight
    std::string wgt_poly;
    int64_t wgt_d = 0;
    auto* cmd_wgt = app.add_subcommand("weight", "boundary Weight multiset at level d");
    cmd_wgt->add_option("polygon", wgt_poly, "polygon document")->required();
    cmd_wgt->add_option("--d", wgt_d, "lattice level (default: polygon denominator)");

    // triangulate
    std::string tri_poly;
    int64_t tri_d = 0;
    auto* cmd_tri = app.add_subcommand("triangulate", "d-minimal triangulation");
    cmd_tri->add_option("polygon", tri_poly, "polygon document")->required();
    cmd_tri->add_option("--d", tri_d, "lattice level (default: polygon denominator)");

    // dynamics
    std::string dyn_poly;
    int64_t dyn_d = 0;
    uint64_t dyn_limit = 1'000'000;
    auto* cmd_dyn = app.add_subcommand("dynamics", "pseudo-flip reachable set summary");
    cmd_dyn->add_option("polygon", dyn_poly, "polygon document")->required();
    cmd_dyn->add_option("--d", dyn_d, "lattice level (default: polygon denominator)");
    cmd_dyn->add_option("--limit", dyn_limit, "max states to explore")->capture_default_str();

    // graph
    int64_t graph_d = 1;
    std::string graph_dot;
    auto* cmd_graph = app.add_subcommand("graph", "weight class graph G_d");
    cmd_graph->add_option("--d", graph_d, "modulus")->required();
    cmd_graph->add_option("--dot", graph_dot, "write GraphViz output to this file");

    // decide
    std::string dec_a, dec_b, dec_rel_out = "relation.json";
    int64_t dec_multiple = 4;
    uint64_t dec_limit = 1'000'000;
    auto* cmd_dec = app.add_subcommand("decide", "decide equidecomposability of two polygons");
    cmd_dec->add_option("polygonA", dec_a, "first polygon document")->required();
    cmd_dec->add_option("polygonB", dec_b, "second polygon document")->required();
    cmd_dec->add_option("--max-multiple", dec_multiple, "try d' = d..max_multiple*d")
        ->capture_default_str();
    cmd_dec->add_option("--limit", dec_limit, "max dynamics states per d'")->capture_default_str();
    cmd_dec->add_option("--relation-out", dec_rel_out, "relation document written on Yes")
        ->capture_default_str();

    // verify
    std::string ver_a, ver_b, ver_rel;
    auto* cmd_ver = app.add_subcommand("verify", "independently verify a relation document");
    cmd_ver->add_option("polygonA", ver_a, "source polygon document")->required();
    cmd_ver->add_option("polygonB", ver_b, "target polygon document")->required();
    cmd_ver->add_option("relation", ver_rel, "relation document")->required();

    // synthesize
    std::string syn_poly, syn_target_out = "target.json", syn_rel_out = "ground_truth.json";
    int64_t syn_d = 0;
    uint64_t syn_seed = 0;
    auto* cmd_syn = app.add_subcommand("synthesize", "random equidecomposable pair with ground truth");
    cmd_syn->add_option("polygon", syn_poly, "source polygon document")->required();
    cmd_syn->add_option("--d", syn_d, "triangulation level (default: polygon denominator)");
    cmd_syn->add_option("--seed", syn_seed, "deterministic seed")->capture_default_str();
    cmd_syn->add_option("--target-out", syn_target_out, "target polygon file")->capture_default_str();
    cmd_syn->add_option("--relation-out", syn_rel_out, "ground-truth relation file")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 3;
    }

    if (cmd_ehr->parsed()) {
        Polygon p = load_polygon(ehr_poly);
        QuasiPolynomial qp = ehrhart_quasipolynomial(p, threads);
        std::cout << dump_json(to_json(qp));
        std::cerr << "period " << qp.period.str() << "\n";
        return 0;
    }
    if (cmd_cen->parsed()) {
        Polygon p = load_polygon(cen_poly);
        PrimitiveCensus c = primitive_census(p, BigInt(cen_max));
        std::cout << dump_json(to_json(c));
        return 0;
    }
    if (cmd_wgt->parsed()) {
        Polygon p = load_polygon(wgt_poly);
        BigInt d = wgt_d > 0 ? BigInt(wgt_d) : p.denominator();
        std::cout << dump_json(to_json(polygon_weight(p, d)));
        return 0;
    }
    if (cmd_tri->parsed()) {
        Polygon p = load_polygon(tri_poly);
        BigInt d = tri_d > 0 ? BigInt(tri_d) : p.denominator();
        Triangulation t = minimal_triangulation(p, d);
        Json facets = Json::array();
        for (const auto& f : t.facets())
            facets.push_back(Json::array(
                {point_to_json(f.a), point_to_json(f.b), point_to_json(f.c)}));
        Json out{{"level", bigint_to_json(d)},
                 {"vertices", t.vertices().size()},
                 {"edges", t.edges().size()},
                 {"facets", facets}};
        std::cout << dump_json(out);
        std::cerr << t.facets().size() << " facets\n";
        return 0;
    }
    if (cmd_dyn->parsed()) {
        Polygon p = load_polygon(dyn_poly);
        BigInt d = dyn_d > 0 ? BigInt(dyn_d) : p.denominator();
        DynamicsLimits limits;
        limits.max_states = dyn_limit;
        PseudoTriangulation tau = initial_pseudo_triangulation(p, d);
        ReachabilityResult r = dynamics_reachable(tau, limits);
        Json seed = Json::array();
        for (const auto& t : tau.triples) seed.push_back(to_json(t));
        Json out{{"d", bigint_to_json(d)},
                 {"cardinality", tau.triples.size()},
                 {"initial", seed},
                 {"states", r.states.size()},
                 {"truncated", r.truncated}};
        std::cout << dump_json(out);
        return 0;
    }
    if (cmd_graph->parsed()) {
        WeightClassGraph g = weight_class_graph(BigInt(graph_d));
        std::string dot = to_dot(g);
        if (!graph_dot.empty()) write_text_file(graph_dot, dot);
        Json classes = Json::array();
        for (const auto& v : g.vertices) classes.push_back(to_json(v));
        size_t loops = 0;
        for (const auto& e : g.edges)
            if (e.a == e.b) ++loops;
        Json out{{"d", graph_d},
                 {"classes", classes},
                 {"edges", g.edges.size()},
                 {"loops", loops}};
        if (graph_dot.empty()) out["dot"] = dot;
        std::cout << dump_json(out);
        return 0;
    }
    if (cmd_dec->parsed()) {
        Polygon a = load_polygon(dec_a);
        Polygon b = load_polygon(dec_b);
        DecideConfig cfg;
        cfg.max_multiple = BigInt(dec_multiple);
        cfg.limits.max_states = dec_limit;
        cfg.threads = threads;
        Verdict v = decide_equidecomposable(a, b, cfg);
        Json out = to_json(v);
        if (v.outcome == Verdict::Outcome::yes) {
            write_text_file(dec_rel_out, dump_json(to_json(*v.relation)));
            out["relation_file"] = dec_rel_out;
            std::cerr << "yes at d' = " << v.d_prime.str() << "; relation written to "
                      << dec_rel_out << "\n";
        } else {
            std::cerr << (v.outcome == Verdict::Outcome::no ? "no" : "inconclusive");
            if (!v.note.empty()) std::cerr << ": " << v.note;
            std::cerr << "\n";
        }
        std::cout << dump_json(out);
        if (v.outcome == Verdict::Outcome::yes) return 0;
        if (v.outcome == Verdict::Outcome::no) return 1;
        return 2;
    }
    if (cmd_ver->parsed()) {
        Polygon a = load_polygon(ver_a);
        Polygon b = load_polygon(ver_b);
        Relation rel = relation_from_json(read_json_file(ver_rel));
        VerifyReport rep = verify_relation(a, b, rel);
        std::cout << dump_json(to_json(rep));
        std::cerr << (rep.pass() ? "relation verified" : "relation rejected") << "\n";
        return rep.pass() ? 0 : 1;
    }
    if (cmd_syn->parsed()) {
        Polygon p = load_polygon(syn_poly);
        BigInt d = syn_d > 0 ? BigInt(syn_d) : p.denominator();
        SynthesizedPair pair = synthesize_equidecomposable_pair(p, d, syn_seed);
        write_text_file(syn_target_out,
                        dump_json(to_json(PolygonDocument::from_polygon(pair.target))));
        write_text_file(syn_rel_out, dump_json(to_json(pair.relation)));
        Json out{{"target_file", syn_target_out},
                 {"relation_file", syn_rel_out},
                 {"pieces", pair.relation.pieces.size()},
                 {"target_vertices", pair.target.size()}};
        std::cout << dump_json(out);
        std::cerr << "pair written; " << pair.relation.pieces.size() << " ground-truth pieces\n";
        return 0;
    }
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == errc::parse_error ? 3 : 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
