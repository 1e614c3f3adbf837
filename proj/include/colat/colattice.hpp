#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "colat/enumerate.hpp"
#include "colat/reduce.hpp"

namespace colat {

// Where the non-full block of the filtration sits.  The penultimate layout
// follows the filtration used in the average-case analysis; trailing is the
// default here and is what the decoder was tuned on.
enum class RemainderPlacement { trailing, penultimate };

// Cut indices 0 = d_0 < d_1 < ... < d_k = n over an ordered basis; block i
// spans rows [d_i, d_{i+1}).
struct Filtration {
    std::vector<std::size_t> cuts;

    std::size_t blocks() const { return cuts.size() - 1; }
    std::size_t block_start(std::size_t i) const { return cuts[i]; }
    std::size_t block_len(std::size_t i) const { return cuts[i + 1] - cuts[i]; }
    std::size_t max_block() const {
        std::size_t m = 0;
        for (std::size_t i = 0; i < blocks(); ++i) m = std::max(m, block_len(i));
        return m;
    }
};

inline Filtration block_filtration(std::size_t n, std::size_t beta, RemainderPlacement placement) {
    if (beta < 1 || beta > n) throw error("block_filtration: block size out of range");
    if (beta > detail::kEnumMaxRank) throw error("block_filtration: block size above guard (30)");
    Filtration f;
    std::size_t rem = n % beta;
    if (placement == RemainderPlacement::trailing || rem == 0) {
        for (std::size_t c = 0; c < n; c += beta) f.cuts.push_back(c);
        f.cuts.push_back(n);
    } else {
        // all blocks of size beta except the penultimate one, of size rem
        std::size_t k = (n + beta - 1) / beta;
        f.cuts.push_back(0);
        for (std::size_t i = 0; i + 2 < k; ++i) f.cuts.push_back(f.cuts.back() + beta);
        f.cuts.push_back(f.cuts.back() + rem);
        f.cuts.push_back(n);
    }
    return f;
}

// How precompute reduces the basis before cutting it into blocks.
struct ReduceSpec {
    enum class Kind { none, lll, bkz };
    Kind kind = Kind::bkz;
    Rat delta = make_rat(99, 100);
    std::size_t beta = 2;
    int tours = 8;

    static ReduceSpec none() { return {Kind::none, make_rat(99, 100), 2, 8}; }
    static ReduceSpec lll(Rat delta = make_rat(99, 100)) {
        return {Kind::lll, std::move(delta), 2, 8};
    }
    static ReduceSpec bkz(std::size_t beta, int tours = 8) {
        return {Kind::bkz, make_rat(99, 100), beta, tours};
    }
};

// Reduced basis + GSO + block structure, reusable across many targets.
// The integer lam/d tables drive the per-target decode arithmetic.
struct PrecomputedDecoder {
    Basis basis;
    GSOData gso;
    Filtration filtration;
    std::vector<ProjectedBasis> block_bases;
    std::size_t beta = 1;
    RemainderPlacement placement = RemainderPlacement::trailing;
    detail::GsoTables tables;
};

struct DecodeResult {
    IntVec point;
    Rat dist_sq;
    RatVec per_block_dist_sq;
};

namespace detail {

// Nearest-plane loop on the negated target, with per-level contributions.
// Returns the lattice-point coefficients (already sign-resolved).
inline EnumResult nearest_plane_coeffs(const GSOData& gso, const RatVec& tau,
                                       RatVec* per_level = nullptr) {
    std::size_t n = tau.size();
    if (per_level) per_level->assign(n, Rat(0));
    EnumResult r = nearest_plane_block(gso, 0, n, tau);
    if (per_level) {
        // re-derive per-level fractional parts from the chosen coefficients
        for (std::size_t j = 0; j < n; ++j) {
            Rat acc = Rat(r.coeffs[j]) - tau[j];
            for (std::size_t l = j + 1; l < n; ++l) acc += r.coeffs[l] * gso.mu[l][j];
            (*per_level)[j] = acc * acc * gso.bstar_sq[j];
        }
    }
    return r;
}

}  // namespace detail

// Short representative of t modulo the sublattice: r = t - sum c_i v_i with
// the nearest-plane recurrence run on -t (half-up ties), so the component of
// r inside the span has all |<r,v_i*>| / ||v_i*||^2 <= 1/2.
inline RatVec lift(const Basis& sublattice, const RatVec& t) {
    if (sublattice.rank() == 0) return t;
    GSOData gso = gso_profile(sublattice);
    RatVec tau = gso_coords(sublattice.rows, gso, t);
    EnumResult np = detail::nearest_plane_block(gso, 0, sublattice.rank(), tau);
    RatVec r = t;
    for (std::size_t l = 0; l < sublattice.rank(); ++l)
        axpy(r, Rat(-np.coeffs[l]), to_rat(sublattice.rows[l]));
    return r;
}

// Integer variant of lift for lattice vectors; same recurrence, same ties.
inline IntVec lift_int(const Basis& sublattice, const IntVec& v) {
    if (sublattice.rank() == 0) return v;
    GSOData gso = gso_profile(sublattice);
    RatVec tau = gso_coords(sublattice.rows, gso, to_rat(v));
    EnumResult np = detail::nearest_plane_block(gso, 0, sublattice.rank(), tau);
    IntVec r = v;
    for (std::size_t l = 0; l < sublattice.rank(); ++l)
        axpy(r, Int(-np.coeffs[l]), sublattice.rows[l]);
    return r;
}

// Babai's nearest plane: the complete-filtration instance of the decoder.
inline DecodeResult nearest_plane(const Basis& b, const GSOData& gso, const RatVec& t) {
    RatVec tau = gso_coords(b.rows, gso, t);
    if (!in_span(gso, tau, t)) throw error("nearest_plane: target outside span of basis");
    RatVec per_level;
    EnumResult np = detail::nearest_plane_coeffs(gso, tau, &per_level);
    DecodeResult res;
    res.point = coeffs_to_vector(b, np.coeffs);
    res.dist_sq = np.dist_sq;
    res.per_block_dist_sq = std::move(per_level);
    return res;
}

inline DecodeResult nearest_plane(const Basis& b, const RatVec& t) {
    return nearest_plane(b, gso_profile(b), t);
}

// Reduce, cut into blocks of size beta, cache the projected block bases.
inline PrecomputedDecoder precompute(const Basis& b, std::size_t beta,
                                     RemainderPlacement placement = RemainderPlacement::trailing,
                                     std::optional<ReduceSpec> reduction = std::nullopt) {
    std::size_t n = b.rank();
    if (n == 0) throw error("precompute: empty basis");
    if (beta < 1 || beta > std::min<std::size_t>(n, detail::kEnumMaxRank))
        throw error("precompute: block size out of range");
    ReduceSpec spec = reduction.value_or(beta >= 2 ? ReduceSpec::bkz(beta) : ReduceSpec::lll());
    ReducedBasis rb;
    switch (spec.kind) {
        case ReduceSpec::Kind::none:
            rb.basis = b;
            rb.gso = gso_profile(b);
            break;
        case ReduceSpec::Kind::lll:
            rb = lll_reduce(b, spec.delta);
            break;
        case ReduceSpec::Kind::bkz:
            rb = bkz_reduce(b, std::min<std::size_t>(spec.beta, n), spec.tours, spec.delta);
            break;
    }
    PrecomputedDecoder dec;
    dec.basis = std::move(rb.basis);
    dec.gso = std::move(rb.gso);
    compute_bstar(dec.basis.rows, dec.gso);
    dec.filtration = block_filtration(n, beta, placement);
    dec.beta = beta;
    dec.placement = placement;
    dec.block_bases.reserve(dec.filtration.blocks());
    for (std::size_t i = 0; i < dec.filtration.blocks(); ++i)
        dec.block_bases.push_back(project_block(dec.basis, dec.gso, dec.filtration.block_start(i),
                                                dec.filtration.block_len(i)));
    dec.tables = detail::gso_tables_from_gram(gram(dec.basis));
    return dec;
}

// The block decoder: walk the filtration from the top, solve exact CVP in
// each quotient block, lift the block solution over the prefix and subtract.
// All per-target bookkeeping runs on the integer lam/d tables; the residual
// coordinate at level j is R[j] / (qt * d[j+1]).
inline DecodeResult nearest_colattice(const PrecomputedDecoder& dec, const RatVec& t) {
    const GSOData& gso = dec.gso;
    const detail::GsoTables& tab = dec.tables;
    std::size_t n = dec.basis.rank();
    if (t.size() != dec.basis.dim()) throw error("nearest_colattice: dimension mismatch");
    // clear the target's denominators
    Int qt(1);
    for (const auto& x : t) mpz_lcm(qt.get_mpz_t(), qt.get_mpz_t(), x.get_den().get_mpz_t());
    IntVec big_t(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        Rat v = t[j] * qt;
        big_t[j] = v.get_num();
    }
    // extension row of the integer GSO tables: R[j] = <T, b_j*> * d_j
    IntVec rr(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int u = dot(big_t, dec.basis.rows[j]);
        for (std::size_t kk = 0; kk < j; ++kk) {
            u = tab.d[kk + 1] * u - rr[kk] * tab.lam[j][kk];
            mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), tab.d[kk].get_mpz_t());
        }
        rr[j] = std::move(u);
    }
    if (dec.basis.dim() > n) {
        // Parseval check that t lies in the row span
        Rat s(0);
        for (std::size_t j = 0; j < n; ++j) {
            Rat tau(rr[j], qt * tab.d[j + 1]);
            tau.canonicalize();
            s += tau * tau * gso.bstar_sq[j];
        }
        if (s != norm_sq(t)) throw error("nearest_colattice: target outside span of basis");
    }
    std::size_t k = dec.filtration.blocks();
    IntVec u_total(n, Int(0));
    RatVec per_block(k, Rat(0));
    IntVec u_hat(n, Int(0));
    for (std::size_t bi = k; bi-- > 0;) {
        std::size_t start = dec.filtration.block_start(bi);
        std::size_t len = dec.filtration.block_len(bi);
        // nearest-plane seed on the block, in scaled integers
        IntVec s_scaled(len);
        for (std::size_t q = 0; q < len; ++q) s_scaled[q] = -rr[start + q];
        EnumResult np;
        np.coeffs.assign(len, Int(0));
        np.dist_sq = Rat(0);
        for (std::size_t ii = len; ii-- > 0;) {
            Int den = qt * tab.d[start + ii + 1];
            Int c = round_half_up_scaled(s_scaled[ii], den);
            np.coeffs[ii] = -c;
            s_scaled[ii] -= c * den;
            for (std::size_t j = 0; j < ii; ++j)
                s_scaled[j] -= c * qt * tab.lam[start + ii][start + j];
            Rat term(s_scaled[ii] * s_scaled[ii],
                     qt * qt * tab.d[start + ii] * tab.d[start + ii + 1]);
            term.canonicalize();
            np.dist_sq += term;
        }
        // recentered target coordinates are the negated fractional remainders
        RatVec shifted(len);
        for (std::size_t q = 0; q < len; ++q) {
            Rat v(-s_scaled[q], qt * tab.d[start + q + 1]);
            v.canonicalize();
            shifted[q] = std::move(v);
        }
        EnumResult r = detail::enum_cvp_block_seeded(gso, start, len, std::move(shifted), np);
        per_block[bi] = r.dist_sq;
        for (std::size_t j = 0; j < n; ++j) u_hat[j] = 0;
        for (std::size_t q = 0; q < len; ++q) u_hat[start + q] = r.coeffs[q];
        if (start > 0) {
            // lift: nearest-plane-reduce the representative over the prefix;
            // lattice coordinates carry denominator d[l+1] (no qt)
            IntVec s2(start);
            for (std::size_t l = 0; l < start; ++l) {
                Int acc(0);
                for (std::size_t q = 0; q < len; ++q)
                    acc += u_hat[start + q] * tab.lam[start + q][l];
                s2[l] = -acc;
            }
            for (std::size_t l = start; l-- > 0;) {
                Int c = round_half_up_scaled(s2[l], tab.d[l + 1]);
                u_hat[l] = c;
                for (std::size_t j = 0; j < l; ++j) s2[j] -= c * tab.lam[l][j];
            }
        }
        // subtract the lifted representative from the residual
        for (std::size_t j = 0; j < start + len; ++j) {
            Int acc = u_hat[j] * tab.d[j + 1];
            for (std::size_t q = j + 1; q < start + len; ++q) acc += u_hat[q] * tab.lam[q][j];
            rr[j] -= qt * acc;
        }
        for (std::size_t j = 0; j < start + len; ++j) u_total[j] += u_hat[j];
    }
    DecodeResult res;
    res.point = coeffs_to_vector(dec.basis, u_total);
    res.per_block_dist_sq = std::move(per_block);
    res.dist_sq = Rat(0);
    for (const auto& d : res.per_block_dist_sq) res.dist_sq += d;
    return res;
}

inline std::vector<DecodeResult> batch_decode(const PrecomputedDecoder& dec,
                                              const std::vector<RatVec>& targets) {
    std::vector<DecodeResult> out;
    out.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        try {
            out.push_back(nearest_colattice(dec, targets[i]));
        } catch (const error& e) {
            throw error("batch_decode: target " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

// Decoding-radius report for the tail block: planted errors whose projection
// onto the tail quotient is shorter than half its first minimum decode
// exactly.  The Hermite-factor-based radius is a heuristic reference only.
struct BddThreshold {
    Rat threshold_sq;        // (lambda_1(tail block) / 2)^2, exact
    double theta_estimate;   // measured root-Hermite-type base
    double reference_radius; // theta^((2*beta_tail - n) / (2*beta_tail)) * covol^(1/n)
};

inline BddThreshold bdd_threshold(const PrecomputedDecoder& dec) {
    if (dec.beta < 2) throw error("bdd_threshold: decoder must be built with beta >= 2");
    std::size_t n = dec.basis.rank();
    std::size_t last = dec.filtration.blocks() - 1;
    std::size_t start = dec.filtration.block_start(last);
    std::size_t len = dec.filtration.block_len(last);
    EnumResult sv = detail::enum_svp_block(dec.gso, start, len);
    BddThreshold out;
    out.threshold_sq = sv.dist_sq / 4;
    double log2_covol_sq = rat_log2(covolume_sq(dec.basis));
    double log2_h = 0.5 * rat_log2(dec.gso.bstar_sq[0]) - log2_covol_sq / (2.0 * double(n));
    double theta_log2 =
        (n > 1) ? log2_h * 2.0 * double(dec.beta - 1) / double(n - 1) : 0.0;
    out.theta_estimate = std::exp2(theta_log2);
    double bt = double(len);
    double ref_log2 =
        theta_log2 * (2.0 * bt - double(n)) / (2.0 * bt) + log2_covol_sq / (2.0 * double(n));
    out.reference_radius = std::exp2(ref_log2);
    return out;
}

}  // namespace colat
