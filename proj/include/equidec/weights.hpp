#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "equidec/geometry.hpp"
#include "equidec/ntheory.hpp"

namespace equidec {

// ---------------------------------------------------------------------------
// residues and raw weights
// ---------------------------------------------------------------------------

/// Integer residue normalized to [0, d).
struct Residue {
    BigInt value;
    BigInt modulus;

    Residue() : value(0), modulus(1) {}
    Residue(BigInt v, BigInt d) : modulus(std::move(d)) {
        if (modulus <= 0) fail(errc::precondition_violated, "modulus must be positive");
        value = mod_norm(v, modulus);
    }

    Residue operator-() const { return Residue(-value, modulus); }
    bool operator==(const Residue& o) const { return value == o.value && modulus == o.modulus; }
    bool operator<(const Residue& o) const {
        if (modulus != o.modulus) return modulus < o.modulus;
        return value < o.value;
    }
};

/// W(E) of an oriented d-minimal edge: determinant of the matrix whose
/// columns are the scaled endpoints, reduced mod d. Reversing the
/// orientation negates the result.
inline Residue edge_weight(const OrientedSegment& e, const BigInt& d) {
    if (!is_minimal_segment(e, d))
        fail(errc::not_minimal, "edge is not " + d.str() + "-minimal");
    Vec2 p = scaled(e.from, d);
    Vec2 q = scaled(e.to, d);
    return Residue(cross(p, q), d);
}

/// Unordered triple of the counterclockwise edge weights of a d-minimal
/// triangle; the residues always sum to 1 mod d.
struct WeightTriple {
    std::array<BigInt, 3> r; // sorted ascending
    BigInt d;

    WeightTriple() : r{0, 0, 0}, d(1) {}
    WeightTriple(BigInt r1, BigInt r2, BigInt r3, BigInt d_) : d(std::move(d_)) {
        r = {mod_norm(r1, d), mod_norm(r2, d), mod_norm(r3, d)};
        std::sort(r.begin(), r.end());
        if (mod_norm(r[0] + r[1] + r[2] - 1, d) != 0)
            fail(errc::precondition_violated, "weight triple residues must sum to 1 mod d");
    }

    bool operator==(const WeightTriple& o) const { return r == o.r && d == o.d; }
    bool operator!=(const WeightTriple& o) const { return !(*this == o); }
    bool operator<(const WeightTriple& o) const {
        if (d != o.d) return d < o.d;
        return r < o.r;
    }
    bool contains(const BigInt& v) const { return r[0] == v || r[1] == v || r[2] == v; }
};

inline WeightTriple triangle_weight(const Triangle& t, const BigInt& d) {
    if (!is_minimal_triangle(t, d))
        fail(errc::not_minimal, "triangle is not " + d.str() + "-minimal");
    Residue w1 = edge_weight(OrientedSegment(t.a, t.b), d);
    Residue w2 = edge_weight(OrientedSegment(t.b, t.c), d);
    Residue w3 = edge_weight(OrientedSegment(t.c, t.a), d);
    return WeightTriple(w1.value, w2.value, w3.value, d);
}

// ---------------------------------------------------------------------------
// constructive G-maps between minimal cells
// ---------------------------------------------------------------------------

/// Completes a primitive integer vector u to a basis [u | s] with det +1.
inline Mat2 complete_to_unimodular(const Vec2& u) {
    ExtGcd e = extended_gcd(u.x, u.y);
    if (e.g != 1) fail(errc::precondition_violated, "vector is not primitive");
    // columns (u, s) with u.x*s.y - u.y*s.x = 1
    return Mat2(u.x, -e.y, u.y, e.x);
}

/// G-map sending oriented d-minimal E onto F endpoint-to-endpoint (from to
/// from, to to to). The linear part is chosen from the coset of maps taking
/// the scaled direction of E exactly onto that of F; the base points then
/// only need to agree mod d, which is solvable whenever the weight of E is
/// a unit (d-primitive segments) and occasionally beyond. Weights must
/// agree up to sign.
inline GMap map_primitive_segments(const OrientedSegment& e, const OrientedSegment& f,
                                   const BigInt& d) {
    if (!is_minimal_segment(e, d) || !is_minimal_segment(f, d))
        fail(errc::not_primitive, "segments must be " + d.str() + "-minimal");
    Vec2 a = scaled(e.from, d);
    Vec2 u = scaled(e.to, d) - a;
    Vec2 a2 = scaled(f.from, d);
    Vec2 u2 = scaled(f.to, d) - a2;

    Mat2 x1 = complete_to_unimodular(u);
    Mat2 x2 = complete_to_unimodular(u2);
    Vec2 ab = x1.inverse() * a;   // (alpha, beta) in the (u, s) basis
    Vec2 ab2 = x2.inverse() * a2; // (alpha', beta')

    bool weight_matched = false;
    for (int eps : {1, -1}) {
        if (mod_norm(ab2.y - eps * ab.y, d) != 0) continue;
        weight_matched = true;
        BigInt delta = mod_norm(ab2.x - ab.x, d);
        BigInt g = big_gcd(mod_norm(ab.y, d), d);
        if (g == 0) g = d;
        if (delta % g != 0) continue;
        BigInt dg = d / g;
        BigInt m = dg == 1 ? BigInt(0) : mod_norm((delta / g) * mod_inverse(ab.y / g, dg), dg);
        Mat2 mm = x2 * Mat2(1, m, 0, eps) * x1.inverse();
        Vec2 ma = mm * a;
        Vec2 tnum = a2 - ma;
        if (tnum.x % d != 0 || tnum.y % d != 0)
            fail(errc::precondition_violated, "internal: translation not integral");
        GMap gmap(mm, Vec2(tnum.x / d, tnum.y / d));
        if (!(gmap_apply(gmap, e.from) == f.from) || !(gmap_apply(gmap, e.to) == f.to))
            fail(errc::precondition_violated, "internal: endpoint postcondition failed");
        return gmap;
    }
    if (!weight_matched)
        fail(errc::weight_mismatch, "segment weights do not agree up to sign mod " + d.str());
    fail(errc::not_primitive, "no G-map for this endpoint correspondence (non-unit weight)");
}

/// Lift of M to an exactly unimodular matrix congruent to M mod d.
/// Step 1 makes the bottom row coprime via coprime_shift; step 2 corrects
/// the determinant with a Bezout solution of n11*m22 - n12*m21' = -k.
inline Mat2 lift_unimodular_mod_d(const Mat2& m, const BigInt& d) {
    BigInt det = m.det();
    BigInt r = mod_norm(det, d);
    if (r != mod_norm(1, d) && r != mod_norm(-1, d))
        fail(errc::not_invertible_mod_d, "det " + det.str() + " is not +-1 mod " + d.str());
    if (det == 1 || det == -1) return m;

    BigInt m11 = m.a, m12 = m.b, m21 = m.c, m22 = m.d;
    if (m22 == 0) m22 = d; // still congruent mod d; makes the row usable
    BigInt q = coprime_shift(m21, m22, d);
    m21 += q * d;

    BigInt dd = m11 * m22 - m12 * m21;
    bool plus_ok = mod_norm(dd - 1, d) == 0;
    bool minus_ok = mod_norm(dd + 1, d) == 0;
    BigInt sigma;
    if (plus_ok && minus_ok)
        sigma = big_abs(dd - 1) <= big_abs(dd + 1) ? 1 : -1;
    else
        sigma = plus_ok ? 1 : -1;
    BigInt k = (dd - sigma) / d;

    ExtGcd e = extended_gcd(m22, m21); // x*m22 + y*m21 = 1
    if (e.g != 1) fail(errc::precondition_violated, "internal: bottom row not coprime");
    BigInt n11 = -k * e.x;
    BigInt n12 = k * e.y;
    Mat2 lifted(m11 + n11 * d, m12 + n12 * d, m21, m22);
    if (lifted.det() != sigma) fail(errc::precondition_violated, "internal: lift determinant");
    return lifted;
}

// ---------------------------------------------------------------------------
// primitive hulls and canonical forms
// ---------------------------------------------------------------------------

/// An oriented segment is l-primitive when it is l-minimal and its weight is
/// a unit mod l.
inline bool is_primitive_segment(const OrientedSegment& e, const BigInt& l) {
    if (!is_minimal_segment(e, l)) return false;
    return big_gcd(edge_weight(e, l).value, l) == 1;
}

/// The unique primitive segment Pr(E) containing the d-minimal segment E,
/// found by scanning the l-minimal supersegments over divisors l of d.
/// Returns (Pr(E), k) with Pr(E) k-primitive, oriented along E.
inline std::pair<OrientedSegment, BigInt> primitive_hull(const OrientedSegment& e,
                                                         const BigInt& d) {
    if (!is_minimal_segment(e, d))
        fail(errc::not_minimal, "edge is not " + d.str() + "-minimal");
    LatticePoint step = e.to - e.from;
    auto at = [&](const BigInt& j) -> LatticePoint {
        return {e.from.x + Rational(j) * step.x, e.from.y + Rational(j) * step.y};
    };
    std::optional<std::pair<OrientedSegment, BigInt>> found;
    for (const BigInt& l : divisors(d)) {
        // L_l points on the line are a subset of the L_d points at(j); the
        // membership pattern has period d in j
        std::optional<BigInt> j0, j1;
        for (BigInt j = 0; j > -d; --j)
            if (in_lattice(at(j), l)) {
                j0 = j;
                break;
            }
        for (BigInt j = 1; j <= d; ++j)
            if (in_lattice(at(j), l)) {
                j1 = j;
                break;
            }
        if (!j0 || !j1) continue;
        OrientedSegment sup(at(*j0), at(*j1));
        if (!is_primitive_segment(sup, l)) continue;
        if (found) fail(errc::precondition_violated, "internal: primitive hull not unique");
        found.emplace(sup, l);
    }
    if (!found) fail(errc::precondition_violated, "internal: no primitive hull found");
    return *found;
}

/// Canonical representative data of the G-class of a d-minimal edge: the
/// class is determined by (i, k, offset); the oriented representative and
/// the canonicalizing map are kept for constructing explicit bijections.
struct CanonicalEdge {
    OrientedSegment rep;
    BigInt level;  // d
    BigInt k;      // primitivity level of the hull
    BigInt i;      // smaller signed residue of the weight
    BigInt offset; // child index from the y-axis, already mirrored to the near side

    bool operator==(const CanonicalEdge& o) const {
        return level == o.level && k == o.k && i == o.i && offset == o.offset;
    }
    bool operator<(const CanonicalEdge& o) const {
        if (level != o.level) return level < o.level;
        if (i != o.i) return i < o.i;
        if (k != o.k) return k < o.k;
        return offset < o.offset;
    }
};

struct CanonicalEdgeResult {
    CanonicalEdge form;
    GMap map; // sends E onto form.rep as a set
};

/// Runs the canonical form construction: orient for the small residue, map
/// the primitive hull onto the horizontal reference hull at height i/d, and
/// keep whichever of the two orientation choices lands nearest the y-axis.
inline CanonicalEdgeResult canonical_edge_form_with_map(const OrientedSegment& e,
                                                        const BigInt& d) {
    Residue w = edge_weight(e, d);
    BigInt wrev = mod_norm(-w.value, d);
    OrientedSegment eo = e;
    BigInt i = w.value;
    if (wrev < w.value) {
        eo = e.reversed();
        i = wrev;
    } else if (wrev == w.value) {
        Vec2 u = scaled(e.to, d) - scaled(e.from, d);
        bool lex_positive = u.x > 0 || (u.x == 0 && u.y > 0);
        if (!lex_positive) eo = e.reversed();
    }

    auto [hull, k] = primitive_hull(eo, d);
    BigInt n = d / k;
    if (i % n != 0) fail(errc::precondition_violated, "internal: hull level incompatible");
    Rational height(i, d);
    OrientedSegment target({Rational(0), height}, {Rational(1, k), height});

    GMap g1 = map_primitive_segments(hull, target, k);
    GMap g2 = map_primitive_segments(hull, target.reversed(), k);
    OrientedSegment im1 = gmap_apply(g1, eo);
    OrientedSegment im2 = gmap_apply(g2, eo);
    auto child_offset = [&](const OrientedSegment& im) {
        Rational x = std::min(im.from.x, im.to.x) * Rational(d);
        if (!x.is_integer()) fail(errc::precondition_violated, "internal: bad child offset");
        return x.num();
    };
    BigInt j1 = child_offset(im1);
    BigInt j2 = child_offset(im2);

    bool pick_first;
    if (j1 != j2)
        pick_first = j1 < j2;
    else
        pick_first = g1.det() == 1 || g2.det() != 1;
    const GMap& g = pick_first ? g1 : g2;
    const OrientedSegment& im = pick_first ? im1 : im2;
    return {CanonicalEdge{im, d, k, i, pick_first ? j1 : j2}, g};
}

inline CanonicalEdge canonical_edge_form(const OrientedSegment& e, const BigInt& d) {
    return canonical_edge_form_with_map(e, d).form;
}

// ---------------------------------------------------------------------------
// Weight classes of edges and polygons
// ---------------------------------------------------------------------------

/// The full G-equivalence class (+-i together with the canonical form).
struct WeightClassEdge {
    BigInt i;
    CanonicalEdge canonical;

    bool operator==(const WeightClassEdge& o) const {
        return i == o.i && canonical == o.canonical;
    }
    bool operator!=(const WeightClassEdge& o) const { return !(*this == o); }
    bool operator<(const WeightClassEdge& o) const {
        if (i != o.i) return i < o.i;
        return canonical < o.canonical;
    }
};

inline WeightClassEdge edge_weight_class(const OrientedSegment& e, const BigInt& d) {
    CanonicalEdge c = canonical_edge_form(e, d);
    return {c.i, c};
}

/// Multiset of edge Weight classes of the d-minimal decomposition of a
/// polygon boundary.
struct PolygonWeight {
    std::map<WeightClassEdge, long long> counts;
    BigInt d;

    bool operator==(const PolygonWeight& o) const { return d == o.d && counts == o.counts; }
    bool operator!=(const PolygonWeight& o) const { return !(*this == o); }

    long long total() const {
        long long n = 0;
        for (const auto& [cls, c] : counts) n += c;
        return n;
    }
};

inline PolygonWeight polygon_weight(const Polygon& p, const BigInt& d) {
    if (d % p.denominator() != 0)
        fail(errc::denominator_mismatch,
             "polygon denominator " + p.denominator().str() + " does not divide " + d.str());
    PolygonWeight w;
    w.d = d;
    for (const auto& side : p.sides()) {
        auto chain = minimal_chain(side.from, side.to, d);
        for (size_t i = 0; i + 1 < chain.size(); ++i)
            w.counts[edge_weight_class(OrientedSegment(chain[i], chain[i + 1]), d)]++;
    }
    return w;
}

/// Explicit G-map between two edges of equal Weight class, composed from
/// their canonicalizing maps.
inline GMap map_equal_weight_edges(const OrientedSegment& e, const OrientedSegment& f,
                                   const BigInt& d) {
    CanonicalEdgeResult ce = canonical_edge_form_with_map(e, d);
    CanonicalEdgeResult cf = canonical_edge_form_with_map(f, d);
    if (!(WeightClassEdge{ce.form.i, ce.form} == WeightClassEdge{cf.form.i, cf.form}))
        fail(errc::class_mismatch, "edges lie in different Weight classes");
    GMap g = gmap_compose(gmap_invert(cf.map), ce.map);
    OrientedSegment im = gmap_apply(g, e);
    if (!im.same_set(f)) fail(errc::precondition_violated, "internal: edge map postcondition");
    return g;
}

/// Explicit G-map g with g(S) = T between d-minimal triangles of equal
/// weight. Tries the six vertex correspondences; the scaled edge vectors of
/// a minimal triangle form a unimodular basis, so the linear part is always
/// integral and only the translation can obstruct.
inline GMap triangle_map(const Triangle& s, const Triangle& t, const BigInt& d) {
    if (!is_minimal_triangle(s, d) || !is_minimal_triangle(t, d))
        fail(errc::not_minimal, "triangles must be " + d.str() + "-minimal");
    Vec2 sa = scaled(s.a, d);
    Vec2 e1 = scaled(s.b, d) - sa;
    Vec2 e2 = scaled(s.c, d) - sa;
    Mat2 basis_s(e1.x, e2.x, e1.y, e2.y);
    Mat2 inv_s = basis_s.inverse();

    std::array<std::array<LatticePoint, 3>, 6> correspondences = {{
        {t.a, t.b, t.c},
        {t.b, t.c, t.a},
        {t.c, t.a, t.b},
        {t.a, t.c, t.b},
        {t.c, t.b, t.a},
        {t.b, t.a, t.c},
    }};
    for (const auto& corr : correspondences) {
        Vec2 ta = scaled(corr[0], d);
        Vec2 f1 = scaled(corr[1], d) - ta;
        Vec2 f2 = scaled(corr[2], d) - ta;
        Mat2 basis_t(f1.x, f2.x, f1.y, f2.y);
        Mat2 m = basis_t * inv_s;
        Vec2 tnum = ta - m * sa;
        if (tnum.x % d != 0 || tnum.y % d != 0) continue;
        GMap g(m, Vec2(tnum.x / d, tnum.y / d));
        if (gmap_apply(g, s) == t) return g;
    }
    fail(errc::class_mismatch, "triangles are not G-equivalent");
}

} // namespace equidec
