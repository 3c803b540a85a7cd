#pragma once

#include <map>
#include <vector>

#include "equidec/geometry.hpp"
#include "equidec/ntheory.hpp"
#include "equidec/threading.hpp"
#include "equidec/weights.hpp"

namespace equidec {

/// |tP ∩ Z^2|, equivalently |P ∩ L_t|, by exact point location over the
/// bounding box.
inline BigInt count_lattice_points(const Polygon& p, const BigInt& t) {
    if (t < 1) fail(errc::precondition_violated, "dilation factor must be >= 1");
    Rational xmin, xmax, ymin, ymax;
    p.bounding_box(xmin, xmax, ymin, ymax);
    BigInt ix0 = (xmin * Rational(t)).ceil();
    BigInt ix1 = (xmax * Rational(t)).floor();
    BigInt iy0 = (ymin * Rational(t)).ceil();
    BigInt iy1 = (ymax * Rational(t)).floor();
    BigInt count = 0;
    for (BigInt ix = ix0; ix <= ix1; ++ix)
        for (BigInt iy = iy0; iy <= iy1; ++iy)
            if (p.locate({Rational(ix, t), Rational(iy, t)}) != Location::Outside) ++count;
    return count;
}

/// Ehrhart counting function as a quasi-polynomial: one degree-<=2
/// constituent per residue class mod the period. constituents[r] is used
/// for t ≡ r (mod period), with constituents[0] covering t ≡ 0.
struct QuasiPolynomial {
    BigInt period;
    std::vector<std::array<Rational, 3>> constituents; // c0 + c1 t + c2 t^2

    Rational evaluate(const BigInt& t) const {
        const auto& c = constituents[size_t(mod_norm(t, period))];
        Rational tt(t);
        return c[0] + c[1] * tt + c[2] * tt * tt;
    }

    /// Equality as functions on positive integers: compare constituents
    /// coefficientwise over the lcm of the two periods.
    bool same_function(const QuasiPolynomial& o) const {
        BigInt l = big_lcm(period, o.period);
        for (BigInt r = 0; r < l; ++r) {
            const auto& c1 = constituents[size_t(mod_norm(r, period))];
            const auto& c2 = o.constituents[size_t(mod_norm(r, o.period))];
            if (c1 != c2) return false;
        }
        return true;
    }
};

namespace detail {

/// Exact quadratic through (t0,y0), (t1,y1), (t2,y2) by Lagrange interpolation.
inline std::array<Rational, 3> lagrange3(const std::array<std::pair<BigInt, BigInt>, 3>& pts) {
    std::array<Rational, 3> acc{Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < 3; ++i) {
        Rational ti(pts[i].first);
        Rational tj(pts[(i + 1) % 3].first);
        Rational tk(pts[(i + 2) % 3].first);
        Rational denom = (ti - tj) * (ti - tk);
        Rational scale = Rational(pts[i].second) / denom;
        // (t - tj)(t - tk) = t^2 - (tj+tk) t + tj*tk
        acc[0] += scale * tj * tk;
        acc[1] += scale * (-(tj + tk));
        acc[2] += scale;
    }
    return acc;
}

} // namespace detail

/// Interpolates the Ehrhart quasi-polynomial of period denominator(P) from
/// exact counts at t = r, r+d, r+2d per residue class, with a redundant
/// fourth sample guarding each fit.
inline QuasiPolynomial ehrhart_quasipolynomial(const Polygon& p, int threads = 1) {
    BigInt d = p.denominator();
    size_t dsz = size_t(d);

    // four samples per residue class, all computed up front
    std::vector<BigInt> ts;
    for (size_t r = 0; r < dsz; ++r) {
        BigInt base = r == 0 ? d : BigInt(r);
        for (int j = 0; j < 4; ++j) ts.push_back(base + BigInt(j) * d);
    }
    std::vector<BigInt> counts(ts.size());
    parallel_for(ts.size(), threads, [&](size_t i) { counts[i] = count_lattice_points(p, ts[i]); });

    QuasiPolynomial qp;
    qp.period = d;
    qp.constituents.resize(dsz);
    for (size_t r = 0; r < dsz; ++r) {
        std::array<std::pair<BigInt, BigInt>, 3> pts;
        for (int j = 0; j < 3; ++j) pts[j] = {ts[4 * r + j], counts[4 * r + j]};
        auto c = detail::lagrange3(pts);
        Rational t3(ts[4 * r + 3]);
        if (c[0] + c[1] * t3 + c[2] * t3 * t3 != Rational(counts[4 * r + 3]))
            fail(errc::interpolation_mismatch,
                 "fourth sample disagrees with quadratic fit at t=" + ts[4 * r + 3].str());
        size_t slot = size_t(mod_norm(ts[4 * r], d));
        qp.constituents[slot] = c;
    }
    return qp;
}

/// |P ∩ S_n|: the points of P at primitivity level exactly n, via the
/// divisor recursion |P ∩ L_n| - sum over proper divisors, cross-checked
/// against direct filtering.
inline BigInt primitive_count(const Polygon& p, const BigInt& n) {
    if (n < 1) fail(errc::precondition_violated, "level must be >= 1");
    std::map<BigInt, BigInt> memo;
    for (const BigInt& m : divisors(n)) {
        BigInt total = count_lattice_points(p, m);
        for (const BigInt& k : divisors(m))
            if (k != m) total -= memo.at(k);
        memo[m] = total;
    }
    BigInt direct = 0;
    for (const auto& q : lattice_points_in_polygon(p, n))
        if (primitivity_level(q) == n) ++direct;
    if (memo.at(n) != direct)
        fail(errc::precondition_violated, "internal: primitive count recursion mismatch");
    return memo.at(n);
}

/// Census of |P ∩ S_n| for n = 1..max_n.
struct PrimitiveCensus {
    std::map<BigInt, BigInt> counts;
};

inline PrimitiveCensus primitive_census(const Polygon& p, const BigInt& max_n) {
    PrimitiveCensus c;
    for (BigInt n = 1; n <= max_n; ++n) c.counts[n] = primitive_count(p, n);
    return c;
}

/// Criterion (1): the Ehrhart quasi-polynomials agree as functions.
inline bool vertex_compatible(const Polygon& p, const Polygon& q, int threads = 1) {
    return ehrhart_quasipolynomial(p, threads).same_function(ehrhart_quasipolynomial(q, threads));
}

namespace detail {

/// Integer translation making the scaled coordinates of p coprime
/// ("visible from the origin" in L_n).
inline GMap visible_shift(const LatticePoint& p, const BigInt& n) {
    Vec2 a = scaled(p, n);
    if (big_gcd(big_abs(a.x), big_abs(a.y)) == 1) return GMap::identity();
    if (a.y == 0) return GMap::translation(0, 1); // (a.x, n): coprime by primitivity
    return GMap::translation(coprime_shift(a.x, a.y, n), 0);
}

} // namespace detail

/// Explicit G-map between two points of equal primitivity level: translate
/// both to visible points, then match the primitive scaled vectors through
/// unimodular basis completions.
inline GMap map_primitive_point(const LatticePoint& p, const LatticePoint& q) {
    BigInt n = primitivity_level(p);
    if (primitivity_level(q) != n)
        fail(errc::level_mismatch, "points have different primitivity levels");
    GMap t1 = detail::visible_shift(p, n);
    GMap t2 = detail::visible_shift(q, n);
    Vec2 v1 = scaled(gmap_apply(t1, p), n);
    Vec2 v2 = scaled(gmap_apply(t2, q), n);
    Mat2 m = complete_to_unimodular(v2) * complete_to_unimodular(v1).inverse();
    GMap g = gmap_compose(gmap_invert(t2), gmap_compose(GMap(m, Vec2()), t1));
    if (!(gmap_apply(g, p) == q)) fail(errc::precondition_violated, "internal: point map postcondition");
    return g;
}

} // namespace equidec
