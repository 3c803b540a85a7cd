#pragma once

#include <map>
#include <set>
#include <vector>

#include "equidec/geometry.hpp"
#include "equidec/weights.hpp"

namespace equidec {

/// Simplicial complex structure of a d'-minimal triangulation of a polygon.
/// Facets are pairwise interior-disjoint, edge-to-edge, and all d'-minimal;
/// edges and vertices are derived faces.
class Triangulation {
public:
    Triangulation(Polygon polygon, BigInt level, std::vector<Triangle> facets)
        : polygon_(std::move(polygon)), level_(std::move(level)), facets_(std::move(facets)) {
        std::sort(facets_.begin(), facets_.end());
        build_faces();
        check_invariants();
    }

    const Polygon& polygon() const { return polygon_; }
    const BigInt& level() const { return level_; }
    const std::vector<Triangle>& facets() const { return facets_; }
    const std::set<SegKey>& edges() const { return edges_; }
    const std::set<LatticePoint>& vertices() const { return vertices_; }
    const std::map<SegKey, std::vector<size_t>>& adjacency() const { return adjacency_; }

    bool operator==(const Triangulation& o) const { return facets_ == o.facets_; }

    /// Expensive exact re-validation: pairwise interior-disjoint facets,
    /// each contained in the polygon. Intended for tests and spot checks.
    void validate_strict() const {
        for (size_t i = 0; i < facets_.size(); ++i) {
            if (!triangle_in_polygon(facets_[i], polygon_))
                fail(errc::precondition_violated, "facet escapes the polygon");
            for (size_t j = i + 1; j < facets_.size(); ++j)
                if (!triangle_overlap_area(facets_[i], facets_[j]).is_zero())
                    fail(errc::precondition_violated, "facets overlap");
        }
    }

private:
    void build_faces() {
        for (size_t i = 0; i < facets_.size(); ++i) {
            for (const auto& e : facets_[i].edges()) adjacency_[SegKey(e)].push_back(i);
            for (const auto& v : facets_[i].vertices()) vertices_.insert(v);
        }
        for (const auto& [k, _] : adjacency_) edges_.insert(k);
    }

    void check_invariants() {
        if (facets_.empty()) fail(errc::precondition_violated, "empty triangulation");
        Rational total(0);
        for (const auto& f : facets_) {
            if (!is_minimal_triangle(f, level_))
                fail(errc::precondition_violated, "facet is not minimal at the complex level");
            total += f.area();
        }
        if (total != polygon_.area())
            fail(errc::precondition_violated, "facet areas do not sum to the polygon area");
        for (const auto& [k, fs] : adjacency_) {
            if (fs.size() > 2) fail(errc::precondition_violated, "edge shared by >2 facets");
            if (fs.size() == 1) {
                // boundary edge must lie on the polygon boundary
                bool on_boundary = false;
                for (const auto& side : polygon_.sides())
                    if (on_segment(k.a, side.from, side.to) && on_segment(k.b, side.from, side.to)) {
                        on_boundary = true;
                        break;
                    }
                if (!on_boundary) fail(errc::precondition_violated, "dangling interior edge");
            }
        }
        // disk topology
        BigInt euler = BigInt(vertices_.size()) - BigInt(edges_.size()) + BigInt(facets_.size());
        if (euler != 1) fail(errc::precondition_violated, "Euler characteristic is not 1");
    }

    Polygon polygon_;
    BigInt level_;
    std::vector<Triangle> facets_;
    std::set<SegKey> edges_;
    std::set<LatticePoint> vertices_;
    std::map<SegKey, std::vector<size_t>> adjacency_;
};

/// Vertex / open edge / open facet decomposition of a triangulation.
struct FaceSets {
    std::set<LatticePoint> vertices;
    std::set<SegKey> open_edges;
    std::vector<Triangle> open_facets;
};

inline FaceSets face_sets(const Triangulation& t) {
    return {t.vertices(), t.edges(), t.facets()};
}

namespace detail {

/// Ear clipping of a simple polygon with exact predicates. Straight
/// (collinear) vertices are dropped first; lattice refinement reinserts
/// every lattice point later anyway.
inline std::vector<Triangle> ear_clip(const Polygon& p) {
    std::vector<LatticePoint> loop;
    const auto& vs = p.vertices();
    size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
        const LatticePoint& prev = vs[(i + n - 1) % n];
        const LatticePoint& next = vs[(i + 1) % n];
        if (orient(prev, vs[i], next) != 0) loop.push_back(vs[i]);
    }
    std::vector<Triangle> out;
    while (loop.size() > 3) {
        size_t m = loop.size();
        bool clipped = false;
        for (size_t i = 0; i < m; ++i) {
            const LatticePoint& a = loop[(i + m - 1) % m];
            const LatticePoint& b = loop[i];
            const LatticePoint& c = loop[(i + 1) % m];
            if (orient(a, b, c) <= 0) continue;
            Triangle ear(a, b, c);
            bool blocked = false;
            for (size_t j = 0; j < m && !blocked; ++j) {
                if (j == i || j == (i + m - 1) % m || j == (i + 1) % m) continue;
                if (ear.side(loop[j]) >= 0) blocked = true;
            }
            if (blocked) continue;
            out.push_back(ear);
            loop.erase(loop.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) fail(errc::invalid_polygon, "ear clipping failed");
    }
    out.emplace_back(loop[0], loop[1], loop[2]);
    return out;
}

inline std::vector<LatticePoint> extra_lattice_points(const Triangle& t, const BigInt& d) {
    std::vector<LatticePoint> out;
    for (const auto& q : lattice_points_in_triangle(t, d))
        if (!t.has_vertex(q)) out.push_back(q);
    return out;
}

/// Splits every facet containing x: through the opposite vertex when x lies
/// on an edge (both facets sharing the edge split together, keeping the
/// complex edge-to-edge), as a 3-fan when x is interior.
inline void split_at_point(std::vector<Triangle>& tris, const LatticePoint& x) {
    std::vector<Triangle> next;
    for (const auto& t : tris) {
        int s = t.side(x);
        if (s < 0 || t.has_vertex(x)) {
            next.push_back(t);
            continue;
        }
        if (s == 0) {
            if (on_segment(x, t.a, t.b)) {
                next.emplace_back(t.a, x, t.c);
                next.emplace_back(x, t.b, t.c);
            } else if (on_segment(x, t.b, t.c)) {
                next.emplace_back(t.b, x, t.a);
                next.emplace_back(x, t.c, t.a);
            } else {
                next.emplace_back(t.c, x, t.b);
                next.emplace_back(x, t.a, t.b);
            }
        } else {
            next.emplace_back(t.a, t.b, x);
            next.emplace_back(t.b, t.c, x);
            next.emplace_back(t.c, t.a, x);
        }
    }
    tris.swap(next);
}

} // namespace detail

/// A d'-minimal triangulation of P: ear-clip, then repeatedly insert the
/// preferred extra lattice point (edge points before interior points,
/// lexicographically smallest first) until every facet is minimal.
inline Triangulation minimal_triangulation(const Polygon& p, const BigInt& dprime) {
    if (dprime % p.denominator() != 0)
        fail(errc::denominator_mismatch,
             "polygon denominator " + p.denominator().str() + " does not divide " + dprime.str());
    std::vector<Triangle> tris = detail::ear_clip(p);
    while (true) {
        std::optional<LatticePoint> best_edge, best_interior;
        for (const auto& t : tris) {
            for (const auto& x : detail::extra_lattice_points(t, dprime)) {
                bool on_edge = t.side(x) == 0;
                auto& slot = on_edge ? best_edge : best_interior;
                if (!slot || x < *slot) slot = x;
            }
        }
        if (!best_edge && !best_interior) break;
        detail::split_at_point(tris, best_edge ? *best_edge : *best_interior);
    }
    return Triangulation(p, dprime, std::move(tris));
}

/// Counterclockwise list of the d'-minimal edges tiling the boundary of P.
inline std::vector<OrientedSegment> boundary_minimal_edges(const Polygon& p, const BigInt& dprime) {
    if (dprime % p.denominator() != 0)
        fail(errc::denominator_mismatch,
             "polygon denominator " + p.denominator().str() + " does not divide " + dprime.str());
    std::vector<OrientedSegment> out;
    for (const auto& side : p.sides()) {
        auto chain = minimal_chain(side.from, side.to, dprime);
        for (size_t i = 0; i + 1 < chain.size(); ++i) out.emplace_back(chain[i], chain[i + 1]);
    }
    return out;
}

/// Exchanges the diagonal of the parallelogram formed by two adjacent
/// facets; minimal flippable pairs always form a parallelogram.
inline Triangulation classical_flip(const Triangulation& t, const Triangle& f1, const Triangle& f2) {
    const auto& fs = t.facets();
    if (std::find(fs.begin(), fs.end(), f1) == fs.end() ||
        std::find(fs.begin(), fs.end(), f2) == fs.end())
        fail(errc::not_adjacent, "facet not in triangulation");

    std::vector<LatticePoint> shared;
    for (const auto& v : f1.vertices())
        if (f2.has_vertex(v)) shared.push_back(v);
    if (shared.size() != 2) fail(errc::not_adjacent, "facets do not share an edge");
    LatticePoint c1, c2;
    for (const auto& v : f1.vertices())
        if (!(v == shared[0]) && !(v == shared[1])) c1 = v;
    for (const auto& v : f2.vertices())
        if (!(v == shared[0]) && !(v == shared[1])) c2 = v;
    if (!(shared[0] + shared[1] == c1 + c2))
        fail(errc::not_parallelogram, "facets do not form a parallelogram");

    std::vector<Triangle> out;
    for (const auto& f : fs)
        if (!(f == f1) && !(f == f2)) out.push_back(f);
    out.emplace_back(shared[0], c1, c2);
    out.emplace_back(shared[1], c1, c2);
    return Triangulation(t.polygon(), t.level(), std::move(out));
}

} // namespace equidec
