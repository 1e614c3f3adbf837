#pragma once

#include <gmpxx.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace colat {

// Arbitrary-precision integers and rationals.  mpq_class keeps values
// canonical (lowest terms, positive denominator), so every Rat produced by
// arithmetic already satisfies the representation invariant.
using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Linearly dependent rows where independence is required.
struct rank_error : error {
    explicit rank_error(const std::string& what) : error(what) {}
};

inline Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_of(const Int& z) { return Rat(z); }

// Nearest integer, ties toward +infinity: floor(x + 1/2).
inline Int round_half_up(const Rat& x) {
    Int two_num = 2 * x.get_num() + x.get_den();
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), Int(2 * x.get_den()).get_mpz_t());
    return q;
}

// round_half_up(num/den) for den > 0 without building a rational.
inline Int round_half_up_scaled(const Int& num, const Int& den) {
    Int two_num = 2 * num + den;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), Int(2 * den).get_mpz_t());
    return q;
}

inline Rat rat_sq(const Rat& x) { return x * x; }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat rat_pow(Rat base, unsigned long e) {
    Rat acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// floor(sqrt(z)) for z >= 0.
inline Int int_sqrt_floor(const Int& z) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

namespace detail {
// 64 extra bits of precision for the directed rational square roots.
inline const Int& sqrt_scale() {
    static const Int s = Int(1) << 64;
    return s;
}
}  // namespace detail

// Rational r with r^2 <= x (x >= 0), within a 2^-64 relative margin.
inline Rat rat_sqrt_lower(const Rat& x) {
    if (sgn(x) < 0) throw error("rat_sqrt_lower: negative argument");
    const Int& s = detail::sqrt_scale();
    Int num = x.get_num() * x.get_den() * s * s;
    Rat r(int_sqrt_floor(num), x.get_den() * s);
    r.canonicalize();
    return r;
}

// Rational r with r^2 >= x (x >= 0).
inline Rat rat_sqrt_upper(const Rat& x) {
    if (sgn(x) < 0) throw error("rat_sqrt_upper: negative argument");
    const Int& s = detail::sqrt_scale();
    Int num = x.get_num() * x.get_den() * s * s;
    Int root = int_sqrt_floor(num) + 1;
    Rat r(root, x.get_den() * s);
    r.canonicalize();
    return r;
}

// Certified rational upper bound on x^(p/q) for x >= 1, q >= 1; exact when
// the reduced exponent is an integer.
inline Rat rat_root_upper(const Rat& x, unsigned long p, unsigned long q) {
    if (x < 1) throw error("rat_root_upper: base below 1");
    if (q == 0) throw error("rat_root_upper: zero root index");
    unsigned long g = std::gcd(p, q);
    p /= g;
    q /= g;
    Rat xp = rat_pow(x, p);
    if (q == 1) return xp;
    double guess = std::pow(mpq_get_d(xp.get_mpq_t()), 1.0 / double(q));
    Rat r(guess * (1.0 + 1e-9));
    // bump until r^q >= x^p; terminates immediately in practice
    while (rat_pow(r, q) < xp) r *= make_rat(1048577, 1048576);
    return r;
}

// log2 of a positive rational, as a double (handles magnitudes far outside
// double range).
inline double rat_log2(const Rat& x) {
    if (sgn(x) <= 0) throw error("rat_log2: non-positive argument");
    signed long int en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    return (std::log2(mn) + double(en)) - (std::log2(md) + double(ed));
}

inline double rat_to_double(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

}  // namespace colat
