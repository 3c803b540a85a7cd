#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "equidec/triangulation.hpp"
#include "equidec/weights.hpp"

namespace equidec {

// ---------------------------------------------------------------------------
// pseudo-triangulations
// ---------------------------------------------------------------------------

/// Multiset of weight triples abstracting a minimal triangulation;
/// canonically stored as a sorted vector.
struct PseudoTriangulation {
    std::vector<WeightTriple> triples;
    BigInt d;

    void canonicalize() { std::sort(triples.begin(), triples.end()); }

    bool operator==(const PseudoTriangulation& o) const { return d == o.d && triples == o.triples; }
    bool operator!=(const PseudoTriangulation& o) const { return !(*this == o); }
    bool operator<(const PseudoTriangulation& o) const {
        if (d != o.d) return d < o.d;
        return triples < o.triples;
    }
};

inline PseudoTriangulation tau_of_facets(const std::vector<Triangle>& facets, const BigInt& d) {
    PseudoTriangulation pt;
    pt.d = d;
    for (const auto& f : facets) pt.triples.push_back(triangle_weight(f, d));
    pt.canonicalize();
    return pt;
}

inline PseudoTriangulation initial_pseudo_triangulation(const Polygon& p, const BigInt& dprime) {
    return tau_of_facets(minimal_triangulation(p, dprime).facets(), dprime);
}

// ---------------------------------------------------------------------------
// pseudo-flips
// ---------------------------------------------------------------------------

/// An admissible matching of two triples: u from w1 against x from w2 on
/// the shared edge, (v,y) and (w,z) opposite pairs. Admissibility means
/// u = -x, v + y = 1, w + z = 1 (mod d).
struct FlipPairing {
    BigInt u, v, w; // decomposition of w1
    BigInt x, y, z; // decomposition of w2

    bool operator==(const FlipPairing& o) const {
        return u == o.u && v == o.v && w == o.w && x == o.x && y == o.y && z == o.z;
    }
    bool operator<(const FlipPairing& o) const {
        auto l = std::tie(u, v, w, x, y, z);
        auto r = std::tie(o.u, o.v, o.w, o.x, o.y, o.z);
        return l < r;
    }
};

/// All admissible pairings of (w1, w2); empty means not pseudo-flippable.
/// At most 36 candidate assignments, deduplicated by value.
inline std::vector<FlipPairing> pseudo_flip_pairings(const WeightTriple& w1,
                                                     const WeightTriple& w2) {
    if (w1.d != w2.d) fail(errc::precondition_violated, "triples have different moduli");
    const BigInt& d = w1.d;
    std::set<FlipPairing> found;
    static const int rest[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    for (int iu = 0; iu < 3; ++iu)
        for (int sv = 0; sv < 2; ++sv)
            for (int ix = 0; ix < 3; ++ix)
                for (int sy = 0; sy < 2; ++sy) {
                    FlipPairing pr{w1.r[iu], w1.r[rest[iu][sv]], w1.r[rest[iu][1 - sv]],
                                   w2.r[ix], w2.r[rest[ix][sy]], w2.r[rest[ix][1 - sy]]};
                    if (mod_norm(pr.u + pr.x, d) != 0) continue;
                    if (mod_norm(pr.v + pr.y - 1, d) != 0) continue;
                    if (mod_norm(pr.w + pr.z - 1, d) != 0) continue;
                    found.insert(pr);
                }
    return {found.begin(), found.end()};
}

/// Applies one pseudo-flip: the exchanged diagonal produces triples
/// {v, 1-w, w-v} and {w, 1-v, v-w} mod d.
inline std::pair<WeightTriple, WeightTriple> pseudo_flip(const WeightTriple& w1,
                                                         const WeightTriple& w2,
                                                         const FlipPairing& pr) {
    const BigInt& d = w1.d;
    auto is_decomp = [&](const WeightTriple& t, const BigInt& a, const BigInt& b, const BigInt& c) {
        std::array<BigInt, 3> arr{mod_norm(a, d), mod_norm(b, d), mod_norm(c, d)};
        std::sort(arr.begin(), arr.end());
        return arr == t.r;
    };
    if (w1.d != w2.d || !is_decomp(w1, pr.u, pr.v, pr.w) || !is_decomp(w2, pr.x, pr.y, pr.z) ||
        mod_norm(pr.u + pr.x, d) != 0 || mod_norm(pr.v + pr.y - 1, d) != 0 ||
        mod_norm(pr.w + pr.z - 1, d) != 0)
        fail(errc::invalid_pairing, "pairing does not match the triples");
    return {WeightTriple(pr.v, 1 - pr.w, pr.w - pr.v, d),
            WeightTriple(pr.w, 1 - pr.v, pr.v - pr.w, d)};
}

// ---------------------------------------------------------------------------
// reachability
// ---------------------------------------------------------------------------

struct DynamicsLimits {
    size_t max_states = 1'000'000;
    size_t max_depth = size_t(-1);
};

struct FlipEvent {
    WeightTriple w1, w2;
    FlipPairing pairing;
};

/// BFS closure of a pseudo-triangulation under all pseudo-flips, with
/// back-pointers for path reconstruction.
struct ReachabilityResult {
    std::vector<PseudoTriangulation> states; // insertion (BFS) order; [0] is the seed
    std::map<PseudoTriangulation, size_t> index;
    std::vector<size_t> parent;           // parent[i] for i > 0
    std::vector<FlipEvent> parent_event;  // event leading from parent[i] to i
    std::vector<size_t> depth;
    bool truncated = false;

    bool contains(const PseudoTriangulation& pt) const { return index.count(pt) > 0; }

    std::vector<FlipEvent> path_to(const PseudoTriangulation& pt) const {
        auto it = index.find(pt);
        if (it == index.end()) fail(errc::precondition_violated, "state not reachable");
        std::vector<FlipEvent> path;
        for (size_t i = it->second; i != 0; i = parent[i]) path.push_back(parent_event[i]);
        std::reverse(path.begin(), path.end());
        return path;
    }
};

namespace detail {

inline void expand_state(const PseudoTriangulation& s,
                         const std::function<void(PseudoTriangulation, FlipEvent)>& emit) {
    size_t n = s.triples.size();
    std::map<std::pair<WeightTriple, WeightTriple>, std::vector<FlipPairing>> cache;
    std::set<std::pair<WeightTriple, WeightTriple>> seen_value_pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto key = std::make_pair(s.triples[i], s.triples[j]);
            // identical value pairs at different positions flip identically
            if (!seen_value_pairs.insert(key).second) continue;
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, pseudo_flip_pairings(key.first, key.second)).first;
            for (const auto& pr : it->second) {
                auto [n1, n2] = pseudo_flip(key.first, key.second, pr);
                PseudoTriangulation next;
                next.d = s.d;
                next.triples = s.triples;
                next.triples.erase(next.triples.begin() + j);
                next.triples.erase(next.triples.begin() + i);
                next.triples.push_back(n1);
                next.triples.push_back(n2);
                next.canonicalize();
                emit(std::move(next), FlipEvent{key.first, key.second, pr});
            }
        }
}

} // namespace detail

/// BFS over all pseudo-flips; deduplication by canonical multiset encoding.
/// `stop_at` aborts the search early once a target state is inserted.
inline ReachabilityResult dynamics_reachable(
    const PseudoTriangulation& seed, const DynamicsLimits& limits = {},
    const std::optional<PseudoTriangulation>& stop_at = std::nullopt) {
    PseudoTriangulation s0 = seed;
    s0.canonicalize();
    ReachabilityResult r;
    r.states.push_back(s0);
    r.index[s0] = 0;
    r.parent.push_back(0);
    r.parent_event.push_back({});
    r.depth.push_back(0);
    if (stop_at && s0 == *stop_at) return r;

    std::deque<size_t> frontier{0};
    while (!frontier.empty()) {
        size_t cur = frontier.front();
        frontier.pop_front();
        if (r.depth[cur] >= limits.max_depth) {
            r.truncated = true;
            continue;
        }
        bool found_target = false;
        PseudoTriangulation state = r.states[cur]; // copy: states may reallocate
        detail::expand_state(state, [&](PseudoTriangulation next, FlipEvent ev) {
            if (found_target) return;
            if (r.index.count(next)) return;
            if (r.states.size() >= limits.max_states) {
                r.truncated = true;
                return;
            }
            size_t id = r.states.size();
            r.index[next] = id;
            r.states.push_back(next);
            r.parent.push_back(cur);
            r.parent_event.push_back(std::move(ev));
            r.depth.push_back(r.depth[cur] + 1);
            frontier.push_back(id);
            if (stop_at && next == *stop_at) found_target = true;
        });
        if (found_target) return r;
    }
    return r;
}

struct DynamicsEqual {
    bool equal = false;
    std::vector<FlipEvent> path;
};

/// Decides D_{d'}(P) = D_{d'}(Q). Pseudo-flips are reversible, so one-sided
/// reachability of the initial pseudo-triangulations is equivalent; the
/// cardinality invariant settles unequal sizes immediately. Throws
/// `truncated` when the limit is hit before resolution.
inline DynamicsEqual dynamics_equal(const Polygon& p, const Polygon& q, const BigInt& dprime,
                                    const DynamicsLimits& limits = {}) {
    PseudoTriangulation tp = initial_pseudo_triangulation(p, dprime);
    PseudoTriangulation tq = initial_pseudo_triangulation(q, dprime);
    if (tp.triples.size() != tq.triples.size()) return {false, {}};
    ReachabilityResult r = dynamics_reachable(tp, limits, tq);
    if (r.contains(tq)) return {true, r.path_to(tq)};
    if (r.truncated) fail(errc::truncated, "state limit hit before resolving reachability");
    return {false, {}};
}

// ---------------------------------------------------------------------------
// weight class enumeration and the graph G_d
// ---------------------------------------------------------------------------

/// All weight triples realized by d-minimal triangles, by exhaustive
/// enumeration of the minimal triangles with vertices in [0,2)^2.
inline std::vector<WeightTriple> enumerate_triangle_weight_classes(const BigInt& d,
                                                                   const BigInt& cap = 16) {
    if (d > cap) fail(errc::cap_exceeded, "weight class enumeration capped at d <= " + cap.str());
    long long dd = d.convert_to<long long>();
    long long span = 2 * dd;
    std::vector<std::pair<long long, long long>> pts;
    for (long long x = 0; x < span; ++x)
        for (long long y = 0; y < span; ++y) pts.emplace_back(x, y);

    auto modd = [&](long long v) { return ((v % dd) + dd) % dd; };
    std::set<WeightTriple> classes;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            long long ux = pts[j].first - pts[i].first;
            long long uy = pts[j].second - pts[i].second;
            for (size_t k = j + 1; k < n; ++k) {
                long long vx = pts[k].first - pts[i].first;
                long long vy = pts[k].second - pts[i].second;
                long long det = ux * vy - uy * vx;
                if (det != 1 && det != -1) continue;
                // counterclockwise order of (i, j, k)
                size_t a = i, b = j, c = k;
                if (det < 0) std::swap(b, c);
                auto w = [&](size_t s, size_t t) {
                    return modd(pts[s].first * pts[t].second - pts[s].second * pts[t].first);
                };
                classes.insert(WeightTriple(w(a, b), w(b, c), w(c, a), d));
            }
        }
    return {classes.begin(), classes.end()};
}

/// The graph G_d: vertices are weight classes, an edge joins flippable
/// classes, labeled by the resulting pair. Loops allowed; distinct pairings
/// may carry distinct labels on the same edge.
struct WeightClassGraph {
    BigInt d;
    std::vector<WeightTriple> vertices;

    struct Edge {
        size_t a, b; // a <= b; a == b is a loop
        FlipPairing pairing;
        std::pair<WeightTriple, WeightTriple> result;
    };
    std::vector<Edge> edges;

    /// Distinct non-loop neighbors of vertex i.
    size_t nonloop_degree(size_t i) const {
        std::set<size_t> nb;
        for (const auto& e : edges) {
            if (e.a == i && e.b != i) nb.insert(e.b);
            if (e.b == i && e.a != i) nb.insert(e.a);
        }
        return nb.size();
    }
};

inline WeightClassGraph weight_class_graph(const BigInt& d, const BigInt& cap = 16) {
    WeightClassGraph g;
    g.d = d;
    g.vertices = enumerate_triangle_weight_classes(d, cap);
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i; j < g.vertices.size(); ++j) {
            std::set<std::pair<WeightTriple, WeightTriple>> labels;
            for (const auto& pr : pseudo_flip_pairings(g.vertices[i], g.vertices[j])) {
                auto res = pseudo_flip(g.vertices[i], g.vertices[j], pr);
                if (res.second < res.first) std::swap(res.first, res.second);
                if (labels.insert(res).second) g.edges.push_back({i, j, pr, res});
            }
        }
    return g;
}

} // namespace equidec
