#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "colat/enumerate.hpp"
#include "colat/rng.hpp"

namespace colat {

enum class InstanceKind { goldstein_mayer, knapsack, explicit_basis };

inline std::string kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::goldstein_mayer: return "gm";
        case InstanceKind::knapsack: return "knapsack";
        case InstanceKind::explicit_basis: return "explicit";
    }
    return "?";
}

// Reproducible instance: regenerating from (kind, n, bits, seed) is
// bit-identical.
struct Instance {
    Basis basis;
    InstanceKind kind = InstanceKind::explicit_basis;
    unsigned n = 0;
    unsigned bits = 0;
    std::uint64_t seed = 0;
};

// Prime p in the corner, random column, identity elsewhere; the standard
// surrogate for a random unit-covolume lattice (after rescaling).
inline Instance goldstein_mayer(unsigned n, unsigned bits, std::uint64_t seed) {
    if (n < 2 || bits < 8) throw error("goldstein_mayer: need n >= 2, bits >= 8");
    Rng rng(seed);
    Int p = rng.next_bits(bits);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    std::vector<IntVec> rows(n, IntVec(n, Int(0)));
    rows[0][0] = p;
    for (unsigned i = 1; i < n; ++i) {
        rows[i][0] = rng.next_below(p);
        rows[i][i] = 1;
    }
    return Instance{Basis(std::move(rows)), InstanceKind::goldstein_mayer, n, bits, seed};
}

// Subset-sum style lattice: identity block with a random weight column, and
// the modulus alone in the last row.
inline Instance knapsack(unsigned n, unsigned bits, std::uint64_t seed) {
    if (n < 2 || bits < 8) throw error("knapsack: need n >= 2, bits >= 8");
    Rng rng(seed);
    Int m = Int(1) << bits;
    std::vector<IntVec> rows(n, IntVec(n, Int(0)));
    for (unsigned i = 0; i + 1 < n; ++i) {
        rows[i][i] = 1;
        rows[i][n - 1] = rng.next_below(m);
    }
    rows[n - 1][n - 1] = m;
    return Instance{Basis(std::move(rows)), InstanceKind::knapsack, n, bits, seed};
}

// Uniform point of the fundamental parallelepiped: sum u_i b_i with u_i
// uniform in [0,1) at denominator 2^64.
inline RatVec uniform_target(const Basis& b, std::uint64_t seed) {
    if (b.rank() == 0) throw error("uniform_target: empty basis");
    Rng rng(seed);
    RatVec t(b.dim(), Rat(0));
    for (std::size_t i = 0; i < b.rank(); ++i) axpy(t, rng.next_unit(), to_rat(b.rows[i]));
    return t;
}

struct BddInstance {
    RatVec target;
    IntVec planted;
    Rat error_norm_sq;
};

// target = planted + e with ||e||^2 <= rel_radius^2 * ref_len_sq, met within
// a 2^-63 relative margin (recorded exactly in error_norm_sq).
inline BddInstance bdd_instance(const Basis& b, const Rat& rel_radius, const Rat& ref_len_sq,
                                std::uint64_t seed) {
    if (sgn(rel_radius) < 0) throw error("bdd_instance: negative radius");
    Rng rng(seed);
    BddInstance inst;
    inst.planted.assign(b.dim(), Int(0));
    for (std::size_t i = 0; i < b.rank(); ++i)
        axpy(inst.planted, Int(rng.next_range(-4, 4)), b.rows[i]);
    RatVec dir(b.dim(), Rat(0));
    while (is_zero(dir))
        for (auto& x : dir) x = Rat(rng.next_range(-1048576, 1048576));
    Rat target_sq = rel_radius * rel_radius * ref_len_sq;
    Rat q = sgn(target_sq) == 0 ? Rat(0) : rat_sqrt_lower(target_sq / norm_sq(dir));
    RatVec e = scale(dir, q);
    inst.error_norm_sq = norm_sq(e);
    inst.target = add(to_rat(inst.planted), e);
    return inst;
}

// Exact squared covering radius for rank <= 2: segments give covol^2/4, and
// in the plane the deep hole is the circumcenter of the Delaunay triangle
// (0, b1, b2) of a Gauss-reduced, acute-oriented basis.
inline Rat mu_exact_rank2(const Basis& b) {
    if (b.rank() == 1) return covolume_sq(b) / 4;
    if (b.rank() != 2) throw error("mu_exact_rank2: rank above 2");
    IntVec b1 = b.rows[0], b2 = b.rows[1];
    // Gauss reduction
    for (;;) {
        if (norm_sq(b1) > norm_sq(b2)) std::swap(b1, b2);
        Rat mu(dot(b2, b1), norm_sq(b1));
        mu.canonicalize();
        Int q = round_half_up(mu);
        if (sgn(q) == 0) break;
        axpy(b2, Int(-q), b1);
    }
    if (norm_sq(b1) > norm_sq(b2)) std::swap(b1, b2);
    if (sgn(dot(b1, b2)) < 0) b2 = neg(std::move(b2));
    // reduced and acute: triangle (0, b1, b2) is non-obtuse, its circumradius
    // is the covering radius; R^2 = a^2 b^2 c^2 / (4 det Gram)
    Int a_sq = norm_sq(b1);
    Int b_sq = norm_sq(b2);
    Int c_sq = norm_sq(sub(b2, b1));
    Int det = a_sq * b_sq - dot(b1, b2) * dot(b1, b2);
    if (sgn(det) == 0) throw rank_error("mu_exact_rank2: rows are linearly dependent");
    Rat r(a_sq * b_sq * c_sq, 4 * det);
    r.canonicalize();
    return r;
}

// Covering radius of a projected block: clear denominators, compute, undo
// the uniform scaling (mu^2 scales by l^2).
inline Rat mu_exact_rank2(const ProjectedBasis& p) {
    Int l(1);
    Basis model = detail::scale_to_integer(p, &l);
    return mu_exact_rank2(model) / Rat(l * l);
}

// Max over sampled targets of the exact CVP distance: a certified lower
// bound on the squared covering radius.  Target i depends only on (seed, i),
// so the bound is monotone in `samples` for a fixed seed.  The basis is
// reduced up front (the covering radius does not depend on the basis).
inline Rat mu_lower_bound(const Basis& b, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw error("mu_lower_bound: need at least one sample");
    if (b.rank() > 12) throw error("mu_lower_bound: rank above 12 refused");
    Rat best(0);
    ReducedBasis red = lll_reduce(b);
    for (std::size_t i = 0; i < samples; ++i) {
        RatVec t = uniform_target(b, Rng::at(seed, i));
        RatVec tau = gso_coords(red.basis.rows, red.gso, t);
        EnumResult r = detail::enum_cvp_block(red.gso, 0, b.rank(), tau);
        if (r.dist_sq > best) best = r.dist_sq;
    }
    return best;
}

// Squared form of the transference inequalities 1 <= 2 lambda_1(dual) mu <= n.
struct TransferenceReport {
    std::size_t n = 0;
    Rat product_sq;        // 4 lambda_1(dual)^2 mu^2 (mu exact or sampled lower bound)
    Rat lambda1_dual_sq;
    Rat mu_sq;
    bool mu_exact = false;
    bool lower_ok = false;
    bool upper_ok = false;  // asserted only when mu is exact

    bool all_ok() const { return lower_ok && (!mu_exact || upper_ok); }
};

inline TransferenceReport transference_check(const Basis& b, std::size_t samples = 64,
                                             std::uint64_t seed = 1) {
    std::size_t n = b.rank();
    if (n < 1 || n > 4) throw error("transference_check: rank must be in [1,4]");
    TransferenceReport rep;
    rep.n = n;
    Rat det = covolume_sq(b);
    auto dual = dual_basis(b);
    std::vector<IntVec> dual_int(n, IntVec(b.dim()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            Rat v = dual[i][j] * det;
            dual_int[i][j] = v.get_num();
        }
    rep.lambda1_dual_sq = Rat(svp_enum(Basis(std::move(dual_int))).dist_sq) / (det * det);
    if (n <= 2) {
        rep.mu_sq = mu_exact_rank2(b);
        rep.mu_exact = true;
    } else {
        rep.mu_sq = mu_lower_bound(b, samples, seed);
        rep.mu_exact = false;
    }
    rep.product_sq = 4 * rep.lambda1_dual_sq * rep.mu_sq;
    rep.lower_ok = rep.product_sq >= 1;
    rep.upper_ok = rep.product_sq <= Rat(n * n);
    return rep;
}

}  // namespace colat
