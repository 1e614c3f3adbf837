#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "colat/enumerate.hpp"
#include "colat/instrument.hpp"
#include "colat/linalg.hpp"
#include "colat/lll.hpp"

namespace colat {

// Classic BKZ sweeps with exact block SVP: at convergence the first vector of
// every rank-beta projected block attains the block minimum.
inline ReducedBasis bkz_reduce(const Basis& b, std::size_t beta, int tours = 8,
                               const Rat& delta = make_rat(99, 100)) {
    std::size_t n = b.rank();
    if (beta < 2 || beta > std::min<std::size_t>(n, detail::kEnumMaxRank))
        throw error("bkz: block size out of range");
    instrument::count_bkz();
    ReducedBasis cur = lll_reduce(b, delta);
    for (int tour = 0; tour < tours; ++tour) {
        bool changed = false;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            std::size_t len = std::min(beta, n - j);
            if (len < 2) break;
            EnumResult r = detail::enum_svp_block(cur.gso, j, len);
            if (r.dist_sq >= cur.gso.bstar_sq[j]) continue;
            // a shortest block vector has primitive coefficients
            if (vec_gcd(r.coeffs) != 1) throw error("bkz: non-primitive block minimum");
            auto u = unimodular_completion(r.coeffs);
            std::vector<IntVec> block(len);
            for (std::size_t i = 0; i < len; ++i) {
                IntVec v(b.dim(), Int(0));
                for (std::size_t q = 0; q < len; ++q) axpy(v, u[i][q], cur.basis.rows[j + q]);
                block[i] = std::move(v);
            }
            for (std::size_t i = 0; i < len; ++i) cur.basis.rows[j + i] = std::move(block[i]);
            cur = lll_reduce(std::move(cur.basis), delta);
            changed = true;
        }
        if (!changed) break;
    }
    return cur;
}

inline Basis bkz(const Basis& b, std::size_t beta, int tours = 8) {
    return bkz_reduce(b, beta, tours).basis;
}

// The gamma-HSVP oracle abstraction: which reduction realizes the oracle and
// the certified squared Hermite factor it guarantees.
struct HsvpOracleKind {
    enum class Alg { lll, bkz, exact_enum };

    Alg alg = Alg::exact_enum;
    Rat lll_delta = make_rat(3, 4);
    std::size_t bkz_beta = 2;
    int bkz_tours = 8;

    static HsvpOracleKind lll(Rat delta = make_rat(3, 4)) {
        HsvpOracleKind k;
        k.alg = Alg::lll;
        k.lll_delta = std::move(delta);
        return k;
    }
    static HsvpOracleKind bkz(std::size_t beta, int tours = 8) {
        HsvpOracleKind k;
        k.alg = Alg::bkz;
        k.bkz_beta = beta;
        k.bkz_tours = tours;
        return k;
    }
    static HsvpOracleKind exact_enum() { return HsvpOracleKind{}; }
};

// Certified gamma^2 (squared Hermite factor) of the oracle at rank n.
// Fractional exponents are rounded up to a certified rational bound.
inline Rat gamma_of(const HsvpOracleKind& kind, std::size_t n) {
    if (n == 0) throw error("gamma_of: empty rank");
    if (n == 1) return Rat(1);
    switch (kind.alg) {
        case HsvpOracleKind::Alg::exact_enum: {
            // Minkowski-type bound on Hermite's constant
            Rat g = Rat(n, 4) + 1;
            g.canonicalize();
            return g;
        }
        case HsvpOracleKind::Alg::lll: {
            Rat base = 4 / (4 * kind.lll_delta - 1);
            return rat_root_upper(base, n - 1, 2);
        }
        case HsvpOracleKind::Alg::bkz: {
            std::size_t be = std::min(kind.bkz_beta, n);
            if (be <= 1) return Rat(1);
            return rat_root_upper(Rat(be), n - 1, be - 1);
        }
    }
    throw error("gamma_of: unknown oracle kind");
}

// Nonzero lattice vector with ||v||^2 <= gamma^2 covol^(2/n); the Hermite
// certificate ||v||^(2n) <= gamma^(2n) covol^2 is asserted exactly.
inline IntVec hsvp_solve(const HsvpOracleKind& kind, const Basis& b) {
    instrument::count_hsvp();
    std::size_t n = b.rank();
    if (n == 0) throw error("hsvp_solve: empty basis");
    IntVec v;
    if (n == 1) {
        v = b.rows[0];
    } else {
        switch (kind.alg) {
            case HsvpOracleKind::Alg::lll:
                v = lll_reduce(b, kind.lll_delta).basis.rows[0];
                break;
            case HsvpOracleKind::Alg::bkz:
                v = bkz_reduce(b, std::min(kind.bkz_beta, n), kind.bkz_tours).basis.rows[0];
                break;
            case HsvpOracleKind::Alg::exact_enum: {
                EnumResult r = svp_enum(b);
                v = coeffs_to_vector(b, r.coeffs);
                break;
            }
        }
    }
    if (is_zero(v)) throw error("hsvp_solve: zero vector");
    Rat nv(norm_sq(v));
    Rat lhs = rat_pow(nv, n);
    Rat rhs = rat_pow(gamma_of(kind, n), n) * covolume_sq(b);
    if (lhs > rhs) throw error("hsvp_solve: Hermite certificate violated");
    return v;
}

// gamma^2-SVP from 2n+1 HSVP calls along the doubling chain from the lattice
// down to 4x the lattice; every chain member is a sublattice, so each
// candidate is a valid lattice vector and the exact minimum is returned.
inline IntVec lovasz_svp_from_hsvp(const Basis& b, const HsvpOracleKind& kind) {
    std::size_t n = b.rank();
    if (n == 0) throw error("lovasz_svp_from_hsvp: empty basis");
    IntVec best = hsvp_solve(kind, b);
    Int best_norm = norm_sq(best);
    Basis work = b;
    for (std::size_t step = 0; step < 2 * n; ++step) {
        std::size_t i = step % n;
        for (auto& x : work.rows[i]) x *= 2;
        IntVec v = hsvp_solve(kind, work);
        Int nv = norm_sq(v);
        if (nv < best_norm) {
            best = std::move(v);
            best_norm = std::move(nv);
        }
    }
    return best;
}

}  // namespace colat
