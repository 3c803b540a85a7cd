#pragma once

#include <random>
#include <vector>

#include "equidec/equidecompose.hpp"

namespace testutil {

using namespace equidec;

using Rng = std::mt19937_64;

inline long long rand_range(Rng& rng, long long lo, long long hi) {
    return lo + (long long)(rng() % (unsigned long long)(hi - lo + 1));
}

inline Polygon unit_square() {
    return Polygon({{Rational(0), Rational(0)},
                    {Rational(1), Rational(0)},
                    {Rational(1), Rational(1)},
                    {Rational(0), Rational(1)}});
}

inline Polygon right_triangle(long long num, long long den) {
    Rational s(num, den);
    return Polygon({{Rational(0), Rational(0)}, {s, Rational(0)}, {Rational(0), s}});
}

/// Random unimodular matrix as a short product of elementary matrices.
inline Mat2 random_unimodular(Rng& rng, int factors = 3) {
    Mat2 u = Mat2::identity();
    for (int i = 0; i < factors; ++i) {
        switch (rng() % 5) {
            case 0: u = u * Mat2(1, 1, 0, 1); break;
            case 1: u = u * Mat2(1, -1, 0, 1); break;
            case 2: u = u * Mat2(1, 0, 1, 1); break;
            case 3: u = u * Mat2(1, 0, -1, 1); break;
            default: u = u * Mat2(0, 1, 1, 0); break;
        }
    }
    return u;
}

inline GMap random_gmap(Rng& rng, int factors = 3, long long tmax = 3) {
    return GMap(random_unimodular(rng, factors),
                Vec2(rand_range(rng, -tmax, tmax), rand_range(rng, -tmax, tmax)));
}

/// Random point of L_d within [-bound, bound]^2.
inline LatticePoint random_lattice_point(Rng& rng, long long d, long long bound = 4) {
    return {Rational(rand_range(rng, -bound * d, bound * d), d),
            Rational(rand_range(rng, -bound * d, bound * d), d)};
}

/// Random d-minimal segment: base point in L_d plus a primitive step.
inline OrientedSegment random_minimal_segment(Rng& rng, long long d, long long span = 5) {
    for (;;) {
        long long ux = rand_range(rng, -span, span);
        long long uy = rand_range(rng, -span, span);
        if (std::gcd(std::abs(ux), std::abs(uy)) != 1) continue;
        LatticePoint from = random_lattice_point(rng, d);
        LatticePoint to{from.x + Rational(ux, d), from.y + Rational(uy, d)};
        return {from, to};
    }
}

/// Random d-minimal triangle: image of the standard corner triangle under a
/// random G-map, then translated by a random L_d vector.
inline Triangle random_minimal_triangle(Rng& rng, long long d) {
    LatticePoint a = random_lattice_point(rng, d, 2);
    Triangle t(a, {a.x + Rational(1, d), a.y}, {a.x, a.y + Rational(1, d)});
    return gmap_apply(random_gmap(rng), t);
}

/// The derived route to the weight classes: every d-minimal triangle is
/// G-equivalent to the corner triangle at (alpha/d, beta/d), whose weights
/// are {-beta, alpha+beta+1, -alpha} mod d.
inline std::vector<WeightTriple> corner_weight_classes(long long d) {
    std::set<WeightTriple> out;
    for (long long alpha = 0; alpha < d; ++alpha)
        for (long long beta = 0; beta < d; ++beta)
            out.insert(WeightTriple(-beta, alpha + beta + 1, -alpha, d));
    return {out.begin(), out.end()};
}

/// All unimodular matrices with entries bounded by `bound` (the literal
/// bounded-search oracle).
inline const std::vector<Mat2>& bounded_unimodular_matrices(long long bound = 10) {
    static std::vector<Mat2> cache;
    static long long cached_bound = -1;
    if (cached_bound != bound) {
        cache.clear();
        for (long long a = -bound; a <= bound; ++a)
            for (long long b = -bound; b <= bound; ++b)
                for (long long c = -bound; c <= bound; ++c) {
                    // a*dd - b*c = ±1  =>  dd = (±1 + b*c)/a when a != 0
                    for (long long dd = -bound; dd <= bound; ++dd) {
                        long long det = a * dd - b * c;
                        if (det == 1 || det == -1) cache.push_back(Mat2(a, b, c, dd));
                    }
                }
        cached_bound = bound;
    }
    return cache;
}

/// Brute-force oracle: is there g in G with bounded entries and translation
/// mapping triangle S onto T (as a set)?
inline bool bounded_triangle_map_exists(const Triangle& s, const Triangle& t, long long bound = 10) {
    auto sv = s.vertices();
    auto tv = t.vertices();
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (const Mat2& m : bounded_unimodular_matrices(bound)) {
        for (const auto& perm : perms) {
            LatticePoint img0{Rational(m.a) * sv[0].x + Rational(m.b) * sv[0].y,
                              Rational(m.c) * sv[0].x + Rational(m.d) * sv[0].y};
            Rational vx = tv[perm[0]].x - img0.x;
            Rational vy = tv[perm[0]].y - img0.y;
            if (!vx.is_integer() || !vy.is_integer()) continue;
            if (big_abs(vx.num()) > bound || big_abs(vy.num()) > bound) continue;
            GMap g(m, Vec2(vx.num(), vy.num()));
            if (gmap_apply(g, sv[1]) == tv[perm[1]] && gmap_apply(g, sv[2]) == tv[perm[2]])
                return true;
        }
    }
    return false;
}

/// Brute-force oracle for segments, endpoint order free.
inline bool bounded_segment_map_exists(const OrientedSegment& e, const OrientedSegment& f,
                                       long long bound = 10) {
    for (const Mat2& m : bounded_unimodular_matrices(bound)) {
        for (int rev = 0; rev < 2; ++rev) {
            LatticePoint target_from = rev ? f.to : f.from;
            LatticePoint target_to = rev ? f.from : f.to;
            LatticePoint img0{Rational(m.a) * e.from.x + Rational(m.b) * e.from.y,
                              Rational(m.c) * e.from.x + Rational(m.d) * e.from.y};
            Rational vx = target_from.x - img0.x;
            Rational vy = target_from.y - img0.y;
            if (!vx.is_integer() || !vy.is_integer()) continue;
            if (big_abs(vx.num()) > bound || big_abs(vy.num()) > bound) continue;
            GMap g(m, Vec2(vx.num(), vy.num()));
            if (gmap_apply(g, e.to) == target_to) return true;
        }
    }
    return false;
}

/// Small random simple polygon with the requested denominator: a convex
/// hull of a handful of random L_d points (falls back to a right triangle).
inline Polygon random_polygon(Rng& rng, long long den, long long bound = 2) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<LatticePoint> pts;
        int n = 3 + int(rng() % 4);
        for (int i = 0; i < n; ++i) pts.push_back(random_lattice_point(rng, den, bound));
        // convex hull (gift wrapping on the small set)
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const LatticePoint& a, const LatticePoint& b) { return a == b; }),
                  pts.end());
        if (pts.size() < 3) continue;
        std::vector<LatticePoint> hull;
        for (int phase = 0; phase < 2; ++phase) {
            size_t start = hull.size();
            auto scan = [&](const LatticePoint& p) {
                while (hull.size() >= start + 2 &&
                       orient(hull[hull.size() - 2], hull.back(), p) <= 0)
                    hull.pop_back();
                hull.push_back(p);
            };
            if (phase == 0)
                for (const auto& p : pts) scan(p);
            else
                for (auto it = pts.rbegin(); it != pts.rend(); ++it) scan(*it);
            hull.pop_back();
        }
        if (hull.size() < 3) continue;
        try {
            Polygon poly(hull);
            if (poly.denominator() == den) return poly;
        } catch (const error&) {
        }
    }
    return right_triangle(1, den);
}

} // namespace testutil
