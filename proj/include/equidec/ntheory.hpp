#pragma once

#include <vector>

#include "equidec/rational.hpp"

namespace equidec {

struct ExtGcd {
    BigInt g, x, y; // g = gcd(a,b) >= 0, a*x + b*y = g
};

inline ExtGcd extended_gcd(BigInt a, BigInt b) {
    BigInt old_r = a, r = b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a mod d (d >= 1); requires gcd(a, d) = 1. Everything is 0 mod 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& d) {
    if (d == 1) return 0;
    ExtGcd e = extended_gcd(mod_norm(a, d), d);
    if (e.g != 1) fail(errc::precondition_violated, "no inverse of " + a.str() + " mod " + d.str());
    return mod_norm(e.x, d);
}

inline std::vector<BigInt> divisors(const BigInt& n) {
    std::vector<BigInt> small, large;
    for (BigInt i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            small.push_back(i);
            if (i * i != n) large.push_back(n / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Prime factors with multiplicity (trial division; desk-scale inputs).
inline std::vector<BigInt> prime_factors(BigInt n) {
    std::vector<BigInt> out;
    if (n < 0) n = -n;
    for (BigInt p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

/// Finds q with gcd(a + q*d, b) = 1, given gcd(gcd(a,b), d) = 1. The
/// constructive choice splits b/gcd(a,b) into the part sharing primes with
/// gcd(a,b) and the rest; validated by a gcd check with an incremental scan
/// as fallback (the scan also settles the degenerate a = 0 / b = 0 cases).
inline BigInt coprime_shift(const BigInt& a, const BigInt& b, const BigInt& d) {
    if (d <= 0) fail(errc::precondition_violated, "coprime_shift needs d >= 1");
    BigInt k = big_gcd(big_abs(a), big_abs(b));
    if (big_gcd(k, d) != 1) fail(errc::precondition_violated, "gcd(gcd(a,b), d) != 1");

    auto ok = [&](const BigInt& q) { return big_gcd(big_abs(a + q * d), big_abs(b)) == 1; };

    if (ok(0)) return 0;
    if (b != 0 && k != 0) {
        BigInt n = big_abs(b) / k;
        BigInt nprime = 1;
        for (const BigInt& p : prime_factors(n))
            if (k % p == 0) nprime *= p;
        BigInt q = n / nprime;
        if (ok(q)) return q;
        if (ok(-q)) return -q;
    }
    for (BigInt q = 1; q <= 4 * big_abs(b) + 4 * d + 4; ++q) {
        if (ok(q)) return q;
        if (ok(-q)) return -q;
    }
    fail(errc::precondition_violated,
         "no shift q with gcd(" + a.str() + " + q*" + d.str() + ", " + b.str() + ") = 1");
}

} // namespace equidec
