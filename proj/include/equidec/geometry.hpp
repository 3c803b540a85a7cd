#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "equidec/gmap.hpp"

namespace equidec {

// ---------------------------------------------------------------------------
// low-level exact predicates
// ---------------------------------------------------------------------------

inline Rational cross_r(const LatticePoint& u, const LatticePoint& v) {
    return u.x * v.y - u.y * v.x;
}

inline Rational dot_r(const LatticePoint& u, const LatticePoint& v) {
    return u.x * v.x + u.y * v.y;
}

/// Sign of the signed area of (a, b, c): +1 ccw, -1 cw, 0 collinear.
inline int orient(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return cross_r(b - a, c - a).sign();
}

/// p lies on the closed segment [a, b].
inline bool on_segment(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b) {
    if (orient(a, b, p) != 0) return false;
    return dot_r(p - a, p - b).sign() <= 0;
}

/// p = dP must be integral; scales a lattice point into integer coordinates.
inline Vec2 scaled(const LatticePoint& p, const BigInt& d) {
    Rational sx = p.x * Rational(d);
    Rational sy = p.y * Rational(d);
    if (!sx.is_integer() || !sy.is_integer())
        fail(errc::precondition_violated, "point not in L_" + d.str());
    return {sx.num(), sy.num()};
}

// ---------------------------------------------------------------------------
// segments
// ---------------------------------------------------------------------------

struct OrientedSegment {
    LatticePoint from;
    LatticePoint to;

    OrientedSegment() = default;
    OrientedSegment(LatticePoint f, LatticePoint t) : from(std::move(f)), to(std::move(t)) {
        if (from == to) fail(errc::precondition_violated, "degenerate segment");
    }

    OrientedSegment reversed() const { return {to, from}; }
    LatticePoint midpoint() const { return {(from.x + to.x) / Rational(2), (from.y + to.y) / Rational(2)}; }

    bool operator==(const OrientedSegment& o) const { return from == o.from && to == o.to; }
    bool same_set(const OrientedSegment& o) const {
        return (from == o.from && to == o.to) || (from == o.to && to == o.from);
    }
};

/// Unordered segment key with lexicographically smaller endpoint first.
struct SegKey {
    LatticePoint a;
    LatticePoint b;

    SegKey() = default;
    SegKey(const LatticePoint& p, const LatticePoint& q) {
        if (p < q) {
            a = p;
            b = q;
        } else {
            a = q;
            b = p;
        }
    }
    explicit SegKey(const OrientedSegment& s) : SegKey(s.from, s.to) {}

    bool operator==(const SegKey& o) const { return a == o.a && b == o.b; }
    bool operator<(const SegKey& o) const {
        if (!(a == o.a)) return a < o.a;
        return b < o.b;
    }
};

enum class SegRel { none, point, overlap };

struct SegX {
    SegRel rel = SegRel::none;
    LatticePoint at; // valid when rel == point
};

/// Exact intersection point of the (non-parallel) lines through (p1,p2) and (p3,p4).
inline LatticePoint line_intersection(const LatticePoint& p1, const LatticePoint& p2,
                                      const LatticePoint& p3, const LatticePoint& p4) {
    Rational denom = cross_r(p2 - p1, p4 - p3);
    if (denom.is_zero()) fail(errc::precondition_violated, "parallel lines");
    Rational t = cross_r(p3 - p1, p4 - p3) / denom;
    return {p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y)};
}

/// Classifies the intersection of closed segments [a,b] and [c,d].
inline SegX seg_intersect(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                          const LatticePoint& d) {
    int o1 = orient(a, b, c);
    int o2 = orient(a, b, d);
    int o3 = orient(c, d, a);
    int o4 = orient(c, d, b);

    if (o1 == 0 && o2 == 0) {
        // collinear: compare 1-D intervals along the dominant axis
        auto key = [&](const LatticePoint& p) {
            return abs(b.x - a.x) >= abs(b.y - a.y) ? p.x : p.y;
        };
        Rational lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
        Rational lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
        Rational lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi) return {SegRel::none, {}};
        if (lo < hi) return {SegRel::overlap, {}};
        // touch at a single point
        LatticePoint z = (key(a) == lo) ? a : (key(b) == lo ? b : (key(c) == lo ? c : d));
        return {SegRel::point, z};
    }
    if (o1 == 0 && on_segment(c, a, b)) return {SegRel::point, c};
    if (o2 == 0 && on_segment(d, a, b)) return {SegRel::point, d};
    if (o3 == 0 && on_segment(a, c, d)) return {SegRel::point, a};
    if (o4 == 0 && on_segment(b, c, d)) return {SegRel::point, b};
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
        return {SegRel::point, line_intersection(a, b, c, d)};
    return {SegRel::none, {}};
}

/// True iff the intersection point lies strictly inside both segments.
inline bool proper_crossing(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                            const LatticePoint& d) {
    int o1 = orient(a, b, c);
    int o2 = orient(a, b, d);
    int o3 = orient(c, d, a);
    int o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// ---------------------------------------------------------------------------
// triangles
// ---------------------------------------------------------------------------

/// Non-degenerate triangle, stored counterclockwise starting at its
/// lexicographically smallest vertex.
struct Triangle {
    LatticePoint a, b, c;

    Triangle() = default;
    Triangle(LatticePoint p, LatticePoint q, LatticePoint r)
        : a(std::move(p)), b(std::move(q)), c(std::move(r)) {
        int o = orient(a, b, c);
        if (o == 0) fail(errc::precondition_violated, "degenerate triangle");
        if (o < 0) std::swap(b, c);
        if (b < a && b < c) {
            std::swap(a, b);
            std::swap(b, c); // rotate (a,b,c) -> (b,c,a)
        } else if (c < a && c < b) {
            std::swap(a, c);
            std::swap(b, c); // rotate (a,b,c) -> (c,a,b)
        }
    }

    Rational area() const { return cross_r(b - a, c - a) / Rational(2); }

    std::vector<LatticePoint> vertices() const { return {a, b, c}; }
    std::vector<OrientedSegment> edges() const {
        return {OrientedSegment(a, b), OrientedSegment(b, c), OrientedSegment(c, a)};
    }

    bool has_vertex(const LatticePoint& p) const { return p == a || p == b || p == c; }

    /// -1 outside, 0 on boundary, +1 strictly inside.
    int side(const LatticePoint& p) const {
        int s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
        if (s1 < 0 || s2 < 0 || s3 < 0) return -1;
        if (s1 == 0 || s2 == 0 || s3 == 0) return 0;
        return 1;
    }

    LatticePoint centroid() const {
        Rational three(3);
        return {(a.x + b.x + c.x) / three, (a.y + b.y + c.y) / three};
    }

    bool operator==(const Triangle& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Triangle& o) const {
        if (!(a == o.a)) return a < o.a;
        if (!(b == o.b)) return b < o.b;
        return c < o.c;
    }
};

inline Triangle gmap_apply(const GMap& g, const Triangle& t) {
    return Triangle(gmap_apply(g, t.a), gmap_apply(g, t.b), gmap_apply(g, t.c));
}

inline OrientedSegment gmap_apply(const GMap& g, const OrientedSegment& s) {
    return OrientedSegment(gmap_apply(g, s.from), gmap_apply(g, s.to));
}

// ---------------------------------------------------------------------------
// minimality predicates
// ---------------------------------------------------------------------------

/// E meets L_d exactly in its endpoints: endpoints in L_d and the scaled
/// displacement is a primitive integer vector.
inline bool is_minimal_segment(const OrientedSegment& e, const BigInt& d) {
    if (!in_lattice(e.from, d) || !in_lattice(e.to, d)) return false;
    Vec2 u = scaled(e.to, d) - scaled(e.from, d);
    return big_gcd(big_abs(u.x), big_abs(u.y)) == 1;
}

/// T meets L_d exactly in its vertices; equivalently area(T) = 1/(2 d^2).
inline bool is_minimal_triangle(const Triangle& t, const BigInt& d) {
    if (!in_lattice(t.a, d) || !in_lattice(t.b, d) || !in_lattice(t.c, d)) return false;
    return t.area() == Rational(BigInt(1), 2 * d * d);
}

/// Splits [a, b] (endpoints in L_d) at all its L_d points; returns the
/// ordered chain a = x0, x1, ..., xg = b of consecutive lattice points.
inline std::vector<LatticePoint> minimal_chain(const LatticePoint& a, const LatticePoint& b,
                                               const BigInt& d) {
    Vec2 w = scaled(b, d) - scaled(a, d);
    BigInt g = big_gcd(big_abs(w.x), big_abs(w.y));
    std::vector<LatticePoint> pts;
    Rational step_x = Rational(w.x, g * d);
    Rational step_y = Rational(w.y, g * d);
    for (BigInt j = 0; j <= g; ++j) {
        pts.push_back({a.x + Rational(j) * step_x, a.y + Rational(j) * step_y});
    }
    return pts;
}

// ---------------------------------------------------------------------------
// polygons
// ---------------------------------------------------------------------------

inline Rational shoelace(const std::vector<LatticePoint>& vs) {
    Rational s(0);
    for (size_t i = 0; i < vs.size(); ++i) {
        const LatticePoint& p = vs[i];
        const LatticePoint& q = vs[(i + 1) % vs.size()];
        s += cross_r(p, q);
    }
    return s / Rational(2);
}

enum class Location { Interior, Boundary, Outside };

/// Simple rational polygon with counterclockwise boundary; may be non-convex.
class Polygon {
public:
    explicit Polygon(std::vector<LatticePoint> vertices) : verts_(std::move(vertices)) {
        validate();
    }

    const std::vector<LatticePoint>& vertices() const { return verts_; }
    size_t size() const { return verts_.size(); }
    const BigInt& denominator() const { return denom_; }
    Rational area() const { return area_; }

    std::vector<OrientedSegment> sides() const {
        std::vector<OrientedSegment> out;
        for (size_t i = 0; i < verts_.size(); ++i)
            out.emplace_back(verts_[i], verts_[(i + 1) % verts_.size()]);
        return out;
    }

    Location locate(const LatticePoint& p) const {
        size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i)
            if (on_segment(p, verts_[i], verts_[(i + 1) % n])) return Location::Boundary;
        bool inside = false;
        for (size_t i = 0; i < n; ++i) {
            const LatticePoint& a = verts_[i];
            const LatticePoint& b = verts_[(i + 1) % n];
            if ((a.y > p.y) != (b.y > p.y)) {
                // x coordinate where the edge crosses the horizontal through p
                Rational t = (p.y - a.y) / (b.y - a.y);
                Rational xint = a.x + t * (b.x - a.x);
                if (xint > p.x) inside = !inside;
            }
        }
        return inside ? Location::Interior : Location::Outside;
    }

    void bounding_box(Rational& xmin, Rational& xmax, Rational& ymin, Rational& ymax) const {
        xmin = xmax = verts_[0].x;
        ymin = ymax = verts_[0].y;
        for (const auto& v : verts_) {
            xmin = std::min(xmin, v.x);
            xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
    }

private:
    void validate() {
        size_t n = verts_.size();
        if (n < 3) fail(errc::invalid_polygon, "fewer than 3 vertices");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (verts_[i] == verts_[j]) fail(errc::invalid_polygon, "repeated vertex");

        Rational a = shoelace(verts_);
        if (a.is_zero()) fail(errc::invalid_polygon, "zero area");
        if (a.sign() < 0) {
            std::reverse(verts_.begin(), verts_.end());
            a = -a;
        }
        area_ = a;

        // simplicity: adjacent sides may only meet at the shared vertex,
        // non-adjacent sides not at all
        for (size_t i = 0; i < n; ++i) {
            const LatticePoint& a1 = verts_[i];
            const LatticePoint& b1 = verts_[(i + 1) % n];
            const LatticePoint& c1 = verts_[(i + 2) % n];
            if (orient(a1, b1, c1) == 0 && dot_r(b1 - a1, c1 - b1).sign() <= 0)
                fail(errc::invalid_polygon, "boundary doubles back");
            for (size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue; // adjacent via wrap-around
                const LatticePoint& a2 = verts_[j];
                const LatticePoint& b2 = verts_[(j + 1) % n];
                if (seg_intersect(a1, b1, a2, b2).rel != SegRel::none)
                    fail(errc::invalid_polygon, "self-intersecting boundary");
            }
        }

        denom_ = 1;
        for (const auto& v : verts_) denom_ = big_lcm(denom_, primitivity_level(v));
    }

    std::vector<LatticePoint> verts_;
    BigInt denom_;
    Rational area_;
};

inline Rational polygon_area(const Polygon& p) { return p.area(); }

inline Location point_location(const Polygon& p, const LatticePoint& q) { return p.locate(q); }

inline Polygon gmap_apply(const GMap& g, const Polygon& p) {
    std::vector<LatticePoint> vs;
    vs.reserve(p.size());
    for (const auto& v : p.vertices()) vs.push_back(gmap_apply(g, v));
    return Polygon(std::move(vs));
}

// ---------------------------------------------------------------------------
// clipping and containment
// ---------------------------------------------------------------------------

/// Clips a convex polygon (ccw vertex list) by the half-plane where
/// orient(h1, h2, x) >= 0, i.e. the left side of h1 -> h2.
inline std::vector<LatticePoint> clip_halfplane(const std::vector<LatticePoint>& poly,
                                                const LatticePoint& h1, const LatticePoint& h2) {
    std::vector<LatticePoint> out;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const LatticePoint& cur = poly[i];
        const LatticePoint& nxt = poly[(i + 1) % n];
        int sc = orient(h1, h2, cur);
        int sn = orient(h1, h2, nxt);
        if (sc >= 0) out.push_back(cur);
        if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) out.push_back(line_intersection(h1, h2, cur, nxt));
    }
    // drop consecutive duplicates introduced by vertices on the clip line
    std::vector<LatticePoint> ded;
    for (const auto& p : out)
        if (ded.empty() || !(ded.back() == p)) ded.push_back(p);
    while (ded.size() > 1 && ded.front() == ded.back()) ded.pop_back();
    return ded;
}

/// Exact area of the intersection of two triangles (0 iff interiors disjoint).
inline Rational triangle_overlap_area(const Triangle& s, const Triangle& t) {
    std::vector<LatticePoint> poly = s.vertices();
    auto te = t.vertices();
    for (size_t i = 0; i < 3 && poly.size() >= 3; ++i)
        poly = clip_halfplane(poly, te[i], te[(i + 1) % 3]);
    if (poly.size() < 3) return Rational(0);
    return shoelace(poly);
}

/// Parameter range [t0, t1] of [a,b] inside the closed triangle, if nonempty.
inline std::optional<std::pair<Rational, Rational>> clip_segment_to_triangle(
    const LatticePoint& a, const LatticePoint& b, const Triangle& t) {
    Rational lo(0), hi(1);
    auto vs = t.vertices();
    for (size_t i = 0; i < 3; ++i) {
        const LatticePoint& h1 = vs[i];
        const LatticePoint& h2 = vs[(i + 1) % 3];
        Rational sa = cross_r(h2 - h1, a - h1);
        Rational sb = cross_r(h2 - h1, b - h1);
        Rational dslope = sb - sa; // sigma(t) = sa + t*dslope, inside: sigma >= 0
        if (dslope.is_zero()) {
            if (sa.sign() < 0) return std::nullopt;
        } else {
            Rational tcut = -sa / dslope;
            if (dslope.sign() > 0)
                lo = std::max(lo, tcut);
            else
                hi = std::min(hi, tcut);
        }
        if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

inline LatticePoint lerp(const LatticePoint& a, const LatticePoint& b, const Rational& t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

/// Closed segment [a,b] contained in the closed polygon (exact).
inline bool segment_in_polygon(const LatticePoint& a, const LatticePoint& b, const Polygon& p) {
    if (p.locate(a) == Location::Outside || p.locate(b) == Location::Outside) return false;
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (const auto& side : p.sides()) {
        SegX x = seg_intersect(a, b, side.from, side.to);
        if (x.rel == SegRel::point) {
            LatticePoint z = x.at;
            Rational t = abs(b.x - a.x) >= abs(b.y - a.y) ? (z.x - a.x) / (b.x - a.x)
                                                          : (z.y - a.y) / (b.y - a.y);
            cuts.push_back(t);
        } else if (x.rel == SegRel::overlap) {
            auto param = [&](const LatticePoint& z) {
                return abs(b.x - a.x) >= abs(b.y - a.y) ? (z.x - a.x) / (b.x - a.x)
                                                        : (z.y - a.y) / (b.y - a.y);
            };
            cuts.push_back(std::clamp(param(side.from), Rational(0), Rational(1)));
            cuts.push_back(std::clamp(param(side.to), Rational(0), Rational(1)));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] == cuts[i + 1]) continue;
        Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
        if (p.locate(lerp(a, b, mid)) == Location::Outside) return false;
    }
    return true;
}

/// Closed triangle contained in the closed polygon (exact).
inline bool triangle_in_polygon(const Triangle& t, const Polygon& p) {
    for (const auto& e : t.edges())
        if (!segment_in_polygon(e.from, e.to, p)) return false;
    if (p.locate(t.centroid()) == Location::Outside) return false;
    // no part of the polygon boundary may dip into the open triangle
    for (const auto& side : p.sides()) {
        auto clipped = clip_segment_to_triangle(side.from, side.to, t);
        if (!clipped) continue;
        auto [lo, hi] = *clipped;
        if (lo == hi) continue;
        Rational mid = (lo + hi) / Rational(2);
        if (t.side(lerp(side.from, side.to, mid)) > 0) return false;
    }
    return true;
}

/// All points of P ∩ L_d, in lexicographic order.
inline std::vector<LatticePoint> lattice_points_in_polygon(const Polygon& p, const BigInt& d) {
    Rational xmin, xmax, ymin, ymax;
    p.bounding_box(xmin, xmax, ymin, ymax);
    std::vector<LatticePoint> out;
    BigInt ix0 = (xmin * Rational(d)).ceil();
    BigInt ix1 = (xmax * Rational(d)).floor();
    BigInt iy0 = (ymin * Rational(d)).ceil();
    BigInt iy1 = (ymax * Rational(d)).floor();
    for (BigInt ix = ix0; ix <= ix1; ++ix)
        for (BigInt iy = iy0; iy <= iy1; ++iy) {
            LatticePoint q{Rational(ix, d), Rational(iy, d)};
            if (p.locate(q) != Location::Outside) out.push_back(q);
        }
    return out;
}

/// All points of T ∩ L_d (closed triangle), in lexicographic order.
inline std::vector<LatticePoint> lattice_points_in_triangle(const Triangle& t, const BigInt& d) {
    Rational xmin = std::min({t.a.x, t.b.x, t.c.x});
    Rational xmax = std::max({t.a.x, t.b.x, t.c.x});
    Rational ymin = std::min({t.a.y, t.b.y, t.c.y});
    Rational ymax = std::max({t.a.y, t.b.y, t.c.y});
    std::vector<LatticePoint> out;
    BigInt ix0 = (xmin * Rational(d)).ceil();
    BigInt ix1 = (xmax * Rational(d)).floor();
    BigInt iy0 = (ymin * Rational(d)).ceil();
    BigInt iy1 = (ymax * Rational(d)).floor();
    for (BigInt ix = ix0; ix <= ix1; ++ix)
        for (BigInt iy = iy0; iy <= iy1; ++iy) {
            LatticePoint q{Rational(ix, d), Rational(iy, d)};
            if (t.side(q) >= 0) out.push_back(q);
        }
    return out;
}

} // namespace equidec
