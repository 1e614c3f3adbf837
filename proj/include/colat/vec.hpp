#pragma once

#include <vector>

#include "colat/numeric.hpp"

namespace colat {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw error("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw error("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const RatVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw error("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) { return dot(b, a); }

inline Int norm_sq(const IntVec& a) { return dot(a, a); }
inline Rat norm_sq(const RatVec& a) { return dot(a, a); }

inline RatVec to_rat(const IntVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
    return r;
}

inline IntVec neg(IntVec a) {
    for (auto& x : a) x = -x;
    return a;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw error("sub: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw error("add: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw error("add: dimension mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw error("sub: dimension mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// a += c*b
inline void axpy(IntVec& a, const Int& c, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline void axpy(RatVec& a, const Rat& c, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline IntVec scale(const IntVec& a, const Int& c) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline RatVec scale(const RatVec& a, const Rat& c) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

inline bool is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

// Flip signs so the first nonzero entry is positive; identity on zero vectors.
inline IntVec sign_normalize(IntVec a) {
    for (const auto& x : a) {
        if (sgn(x) == 0) continue;
        if (sgn(x) < 0) return neg(std::move(a));
        break;
    }
    return a;
}

// Lexicographic order on integer vectors of equal length.
inline bool lex_less(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

inline Int vec_gcd(const IntVec& a) {
    Int g = 0;
    for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

}  // namespace colat
