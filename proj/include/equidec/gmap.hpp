#pragma once

#include "equidec/point.hpp"

namespace equidec {

struct Vec2 {
    BigInt x;
    BigInt y;

    Vec2() : x(0), y(0) {}
    Vec2(BigInt x_, BigInt y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline BigInt cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// 2x2 integer matrix, row-major.
struct Mat2 {
    BigInt a, b, c, d; // [[a, b], [c, d]]

    Mat2() : a(1), b(0), c(0), d(1) {}
    Mat2(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return Mat2(); }

    BigInt det() const { return a * d - b * c; }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    /// Inverse of a unimodular matrix (det must be +-1).
    Mat2 inverse() const {
        BigInt dt = det();
        if (dt != 1 && dt != -1) fail(errc::not_unimodular, "inverse of non-unimodular matrix");
        // adjugate / det, with det = +-1
        return {d * dt, -b * dt, -c * dt, a * dt};
    }
};

/// Affine-unimodular transformation x -> Ux + v with U integer, det(U) = +-1,
/// and v an integer vector. These are exactly the maps preserving every L_D.
struct GMap {
    Mat2 u;
    Vec2 v;

    GMap() = default;
    GMap(Mat2 u_, Vec2 v_) : u(std::move(u_)), v(std::move(v_)) {
        BigInt dt = u.det();
        if (dt != 1 && dt != -1) fail(errc::not_unimodular, "matrix determinant is not +-1");
    }

    static GMap identity() { return GMap(Mat2::identity(), Vec2()); }
    static GMap translation(BigInt tx, BigInt ty) {
        return GMap(Mat2::identity(), Vec2(std::move(tx), std::move(ty)));
    }

    BigInt det() const { return u.det(); }
    bool is_identity() const { return u == Mat2::identity() && v == Vec2(); }
    bool operator==(const GMap& o) const { return u == o.u && v == o.v; }
};

inline LatticePoint gmap_apply(const GMap& g, const LatticePoint& p) {
    return {Rational(g.u.a) * p.x + Rational(g.u.b) * p.y + Rational(g.v.x),
            Rational(g.u.c) * p.x + Rational(g.u.d) * p.y + Rational(g.v.y)};
}

/// apply(compose(g1,g2), p) == apply(g1, apply(g2, p))
inline GMap gmap_compose(const GMap& g1, const GMap& g2) {
    return GMap(g1.u * g2.u, g1.u * g2.v + g1.v);
}

inline GMap gmap_invert(const GMap& g) {
    Mat2 inv = g.u.inverse();
    return GMap(inv, -(inv * g.v));
}

} // namespace equidec
