#pragma once

#include <tuple>

#include "equidec/rational.hpp"

namespace equidec {

/// A point of some refined lattice L_d = (1/d)Z x (1/d)Z (always rational).
struct LatticePoint {
    Rational x;
    Rational y;

    LatticePoint() = default;
    LatticePoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool operator==(const LatticePoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const LatticePoint& o) const { return !(*this == o); }
    /// Lexicographic order; used for all deterministic tie-breaks.
    bool operator<(const LatticePoint& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }

    LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y}; }
    LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y}; }
};

/// Least d with p in L_d: lcm of the reduced coordinate denominators.
inline BigInt primitivity_level(const LatticePoint& p) {
    return big_lcm(p.x.den(), p.y.den());
}

inline bool in_lattice(const LatticePoint& p, const BigInt& d) {
    return d % p.x.den() == 0 && d % p.y.den() == 0;
}

} // namespace equidec
