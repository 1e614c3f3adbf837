#pragma once

// Test-only ground-truth oracles.  Everything here runs in pure rational
// arithmetic with a fixed search radius and plain ascending coefficient
// scans: no floating point, no incumbent-based pruning, independent of the
// production enumeration path it cross-checks.

#include <algorithm>
#include <vector>

#include "colat/colattice.hpp"
#include "colat/latgen.hpp"

namespace colat::oracle {

struct BruteResult {
    IntVec coeffs;
    Rat dist_sq;
};

namespace detail {

// Smallest integer >= x and largest integer <= x.
inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

struct BoxScan {
    const GSOData& gso;
    const RatVec& tau;
    Rat radius_sq;
    bool svp;
    std::size_t n;
    IntVec x;
    bool found = false;
    BruteResult best;

    void scan(std::size_t level, const Rat& partial) {
        if (level == 0) {
            if (svp) {
                bool all_zero = true;
                for (const auto& c : x)
                    if (sgn(c) != 0) {
                        all_zero = false;
                        break;
                    }
                if (all_zero) return;
            }
            IntVec cand = x;
            if (svp) cand = sign_normalize(std::move(cand));
            if (!found || partial < best.dist_sq ||
                (partial == best.dist_sq && lex_less(cand, best.coeffs))) {
                best.coeffs = std::move(cand);
                best.dist_sq = partial;
                found = true;
            }
            return;
        }
        std::size_t i = level - 1;
        Rat center = tau[i];
        for (std::size_t j = i + 1; j < n; ++j) center -= x[j] * gso.mu[j][i];
        Rat room = radius_sq - partial;
        if (sgn(room) < 0) return;
        Rat w = rat_sqrt_upper(room / gso.bstar_sq[i]);
        Int lo = rat_ceil(center - w);
        Int hi = rat_floor(center + w);
        for (Int a = lo; a <= hi; ++a) {
            x[i] = a;
            Rat frac = Rat(a) - center;
            scan(i, partial + frac * frac * gso.bstar_sq[i]);
        }
        x[i] = 0;
    }
};

}  // namespace detail

// Exhaustive rational search for the closest lattice point; the box radius
// comes from the nearest-plane bound and stays fixed for the whole scan.
template <class BasisLike>
inline BruteResult brute_force_cvp(const BasisLike& b, const RatVec& t) {
    GSOData gso = gso_profile(b);
    RatVec tau = gso_coords(b.rows, gso, t);
    EnumResult np = colat::detail::nearest_plane_block(gso, 0, b.rank(), tau);
    detail::BoxScan scan{gso, tau, np.dist_sq, false, b.rank(), IntVec(b.rank(), Int(0))};
    scan.scan(b.rank(), Rat(0));
    if (!scan.found) throw error("brute_force_cvp: empty box");
    return scan.best;
}

template <class BasisLike>
inline BruteResult brute_force_svp(const BasisLike& b) {
    GSOData gso = gso_profile(b);
    Rat radius = norm_sq(to_rat(b.rows[0]));
    for (std::size_t i = 1; i < b.rank(); ++i) radius = std::min(radius, norm_sq(to_rat(b.rows[i])));
    RatVec tau(b.rank(), Rat(0));
    detail::BoxScan scan{gso, tau, radius, true, b.rank(), IntVec(b.rank(), Int(0))};
    scan.scan(b.rank(), Rat(0));
    if (!scan.found) throw error("brute_force_svp: empty box");
    return scan.best;
}

namespace detail {

struct PointCollector {
    const GSOData& gso;
    Rat radius_sq;
    std::size_t n;
    IntVec x;
    std::vector<std::pair<Rat, IntVec>> out;

    void scan(std::size_t level, const Rat& partial) {
        if (level == 0) {
            bool all_zero = true;
            for (const auto& c : x)
                if (sgn(c) != 0) {
                    all_zero = false;
                    break;
                }
            if (!all_zero) out.emplace_back(partial, x);
            return;
        }
        std::size_t i = level - 1;
        Rat center(0);
        for (std::size_t j = i + 1; j < n; ++j) center -= x[j] * gso.mu[j][i];
        Rat room = radius_sq - partial;
        if (sgn(room) < 0) return;
        Rat w = rat_sqrt_upper(room / gso.bstar_sq[i]);
        Int lo = rat_ceil(center - w);
        Int hi = rat_floor(center + w);
        for (Int a = lo; a <= hi; ++a) {
            x[i] = a;
            Rat frac = Rat(a) - center;
            scan(i, partial + frac * frac * gso.bstar_sq[i]);
        }
        x[i] = 0;
    }
};

}  // namespace detail

// All squared successive minima, by exhaustive enumeration of the ball of
// radius max_i ||b_i|| and greedy selection of independent vectors.
inline RatVec brute_force_minima(const Basis& b) {
    std::size_t n = b.rank();
    GSOData gso = gso_profile(b);
    Rat radius(norm_sq(b.rows[0]));
    for (std::size_t i = 1; i < n; ++i) radius = std::max(radius, Rat(norm_sq(b.rows[i])));
    detail::PointCollector pc{gso, radius, n, IntVec(n, Int(0))};
    pc.scan(n, Rat(0));
    std::sort(pc.out.begin(), pc.out.end(), [](const auto& a, const auto& c) {
        if (a.first != c.first) return a.first < c.first;
        return lex_less(a.second, c.second);
    });
    // greedy independent picks, rank tracked by rational elimination
    std::vector<RatVec> rows;
    RatVec minima;
    for (const auto& [dist, coeffs] : pc.out) {
        if (minima.size() == n) break;
        RatVec v = to_rat(coeffs_to_vector(b, coeffs));
        RatVec w = v;
        for (const auto& r : rows) {
            Rat num = dot(w, r);
            Rat den = dot(r, r);
            if (sgn(num) != 0) axpy(w, Rat(-num / den), r);
        }
        if (is_zero(w)) continue;
        rows.push_back(std::move(w));
        minima.push_back(dist);
    }
    if (minima.size() != n) throw error("brute_force_minima: ball radius missed some minima");
    return minima;
}

// LLL-reduced Goldstein-Mayer corpus instance (the oracle box search needs a
// reduced basis to stay small).
inline Basis reduced_gm(unsigned n, std::uint64_t seed) {
    return lll(goldstein_mayer(n, 10 * n, seed).basis);
}

}  // namespace colat::oracle
