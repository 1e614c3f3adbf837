#pragma once

// Invariant suites behind `colat verify`: exact rational assertions over
// freshly generated corpora.  The first failing check reports the instance
// seed and stops the suite.

#include <functional>
#include <iostream>
#include <string>

#include "colat/colattice.hpp"
#include "colat/cvpp.hpp"
#include "colat/latgen.hpp"

namespace colat::selftest {

struct Context {
    std::uint64_t seed_base = 1;
    std::ostream* out = &std::cout;
    std::uint64_t failing_seed = 0;
    std::string failure;

    bool fail(std::uint64_t seed, const std::string& what) {
        failing_seed = seed;
        failure = what;
        (*out) << "FAIL (seed " << seed << "): " << what << "\n";
        return false;
    }
};

inline bool suite_exact(Context& ctx) {
    for (std::uint64_t s = ctx.seed_base; s < ctx.seed_base + 8; ++s) {
        Basis b = lll(goldstein_mayer(5, 50, s).basis);
        GSOData g = gram_schmidt(b);
        Rat prod(1);
        for (std::size_t i = 0; i < b.rank(); ++i) {
            prod *= g.bstar_sq[i];
            RatVec v = g.bstar[i];
            for (std::size_t j = 0; j < i; ++j) {
                if (dot(g.bstar[i], g.bstar[j]) != 0)
                    return ctx.fail(s, "gso orthogonality violated");
                axpy(v, Rat(g.mu[i][j]), g.bstar[j]);
            }
            if (v != to_rat(b.rows[i])) return ctx.fail(s, "gso reconstruction violated");
        }
        if (prod != covolume_sq(b)) return ctx.fail(s, "bstar product != covolume^2");
        auto d = dual_basis(b);
        for (std::size_t i = 0; i < b.rank(); ++i)
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (dot(d[i], b.rows[j]) != (i == j ? Rat(1) : Rat(0)))
                    return ctx.fail(s, "dual basis not biorthogonal");
        IntVec a{Int(3), Int(-5), Int(2), Int(9), Int(-1)};
        Basis k = kernel_sublattice(b, a);
        if (k.rank() != b.rank() - 1) return ctx.fail(s, "kernel rank wrong");
        for (const auto& row : k.rows) {
            IntVec coeffs = lattice_coords(b, row);
            Int ip(0);
            for (std::size_t i = 0; i < a.size(); ++i) ip += coeffs[i] * a[i];
            if (sgn(ip) != 0) return ctx.fail(s, "kernel row not orthogonal to c");
        }
        IntVec x = bezout_point(b, a, Int(1));
        IntVec coeffs = lattice_coords(b, x);
        Int ip(0);
        for (std::size_t i = 0; i < a.size(); ++i) ip += coeffs[i] * a[i];
        if (ip != 1) return ctx.fail(s, "bezout point inner product != 1");
        Rng rng(s);
        for (int i = 0; i < 64; ++i) {
            Rat x_r(long(rng.next() % 4001) - 2000, long(rng.next() % 37) + 1);
            x_r.canonicalize();
            Rat res = Rat(round_half_up(x_r)) - x_r;
            if (res <= make_rat(-1, 2) || res > make_rat(1, 2))
                return ctx.fail(s, "round_half_up residue out of range");
        }
    }
    (*ctx.out) << "ok: exact linear algebra invariants\n";
    return true;
}

inline bool suite_colattice(Context& ctx) {
    for (std::uint64_t s = ctx.seed_base; s < ctx.seed_base + 4; ++s) {
        auto inst = goldstein_mayer(8, 80, s);
        for (std::size_t beta : {std::size_t(1), std::size_t(2), std::size_t(4), std::size_t(8)}) {
            PrecomputedDecoder dec = precompute(inst.basis, beta);
            for (int ti = 0; ti < 4; ++ti) {
                RatVec t = uniform_target(inst.basis, 100 * s + ti);
                DecodeResult r = nearest_colattice(dec, t);
                Rat sum(0);
                for (const auto& dsq : r.per_block_dist_sq) sum += dsq;
                if (sum != r.dist_sq) return ctx.fail(s, "per-block distances do not sum");
                RatVec diff = sub(to_rat(r.point), t);
                if (norm_sq(diff) != r.dist_sq) return ctx.fail(s, "dist_sq not exact");
                Rat babai(0);
                for (const auto& bs : dec.gso.bstar_sq) babai += bs / 4;
                if (r.dist_sq > babai) return ctx.fail(s, "Babai bound violated");
                if (beta == 1) {
                    DecodeResult np = nearest_plane(dec.basis, dec.gso, t);
                    if (np.point != r.point || np.dist_sq != r.dist_sq)
                        return ctx.fail(s, "beta=1 decode != nearest_plane");
                }
                if (beta == 8) {
                    EnumResult exact = cvp_enum(dec.basis, t);
                    if (exact.dist_sq != r.dist_sq)
                        return ctx.fail(s, "single-block decode != exact CVP");
                }
                if (beta == 2) {
                    for (std::size_t bi = 0; bi < dec.filtration.blocks(); ++bi)
                        if (r.per_block_dist_sq[bi] > mu_exact_rank2(dec.block_bases[bi]))
                            return ctx.fail(s, "per-block covering-radius bound violated");
                }
            }
        }
    }
    (*ctx.out) << "ok: colattice decoder invariants\n";
    return true;
}

inline bool suite_cvpp(Context& ctx) {
    HsvpOracleKind kind = HsvpOracleKind::exact_enum();
    for (std::uint64_t s = ctx.seed_base; s < ctx.seed_base + 3; ++s) {
        for (unsigned n : {4u, 6u}) {
            Basis b = lll(goldstein_mayer(n, 10 * n, s).basis);
            AbsoluBasis ab = build_absolu_basis(b, kind);
            if (covolume_sq(ab.basis) != covolume_sq(b))
                return ctx.fail(s, "absolu basis changed the lattice");
            CvppPrecomp pre = cvpp_precompute(b, kind);
            Rat g = gamma_of(kind, n);
            Rat factor = Rat(n) * Rat(n) * Rat(n) * g * g * g;
            for (int ti = 0; ti < 3; ++ti) {
                RatVec t = uniform_target(b, 40 * s + ti);
                DecodeResult r = cvpp_decode(pre, t);
                RatVec diff = sub(to_rat(r.point), t);
                if (norm_sq(diff) != r.dist_sq) return ctx.fail(s, "cvpp dist_sq not exact");
                Rat sum(0);
                for (const auto& dsq : r.per_block_dist_sq) sum += dsq;
                if (sum != r.dist_sq) return ctx.fail(s, "cvpp chain distances do not sum");
                DecodeResult a = absolu_decode(pre.levels[0].absolu, t);
                if (r.dist_sq > a.dist_sq) return ctx.fail(s, "min-of-two dominance violated");
                EnumResult exact = cvp_enum(b, t);
                if (r.dist_sq > factor * exact.dist_sq)
                    return ctx.fail(s, "cvpp approximation factor violated");
            }
        }
    }
    (*ctx.out) << "ok: cvpp reduction invariants\n";
    return true;
}

inline bool suite_transference(Context& ctx) {
    for (std::uint64_t s = ctx.seed_base; s < ctx.seed_base + 50; ++s) {
        Instance inst = goldstein_mayer(2, 14, s);
        TransferenceReport r = transference_check(inst.basis);
        if (!r.all_ok()) return ctx.fail(s, "rank-2 transference inequality violated");
    }
    for (std::uint64_t s = ctx.seed_base; s < ctx.seed_base + 4; ++s) {
        for (unsigned n : {3u, 4u}) {
            Basis b = lll(goldstein_mayer(n, 10 * n, s).basis);
            TransferenceReport r = transference_check(b, 160, s);
            if (!r.lower_ok) return ctx.fail(s, "transference lower inequality not certified");
        }
    }
    (*ctx.out) << "ok: transference sanity checks (rank <= 4)\n";
    return true;
}

inline bool run_suite(const std::string& name, Context& ctx) {
    if (name == "exact") return suite_exact(ctx);
    if (name == "colattice") return suite_colattice(ctx);
    if (name == "cvpp") return suite_cvpp(ctx);
    if (name == "transference") return suite_transference(ctx);
    if (name == "all")
        return suite_exact(ctx) && suite_colattice(ctx) && suite_cvpp(ctx) &&
               suite_transference(ctx);
    throw error("unknown suite '" + name + "'");
}

}  // namespace colat::selftest
