#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "colat/colattice.hpp"
#include "colat/reduce.hpp"

namespace colat {

// Basis built vector by vector from oracle calls on successive quotients;
// every Gram-Schmidt norm is bounded by gamma * lambda_n of the lattice.
struct AbsoluBasis {
    Basis basis;
    GSOData gso;
    Rat quality_gamma_sq;
};

// One oracle call per rank: solve HSVP on the projection orthogonal to the
// prefix, lift the result over the prefix, install it as the next vector.
inline AbsoluBasis build_absolu_basis(const Basis& b, const HsvpOracleKind& kind) {
    std::size_t n = b.rank();
    if (n == 0) throw error("build_absolu_basis: empty basis");
    Basis work = b;
    for (std::size_t i = 0; i < n; ++i) {
        GSOData gso = gram_schmidt(work);
        ProjectedBasis proj = project_block(work, gso, i, n - i);
        Basis scaled = detail::scale_to_integer(proj);
        IntVec v = hsvp_solve(kind, scaled);
        IntVec coeffs = lattice_coords(scaled, v);
        Int g = vec_gcd(coeffs);
        if (sgn(g) == 0) throw error("build_absolu_basis: oracle returned a prefix-span vector");
        if (g != 1)
            for (auto& c : coeffs) c /= g;
        auto u = unimodular_completion(coeffs);
        std::size_t len = n - i;
        std::vector<IntVec> tail(len);
        for (std::size_t r = 0; r < len; ++r) {
            IntVec row(work.dim(), Int(0));
            for (std::size_t q = 0; q < len; ++q) axpy(row, u[r][q], work.rows[i + q]);
            tail[r] = std::move(row);
        }
        for (std::size_t r = 0; r < len; ++r) work.rows[i + r] = std::move(tail[r]);
        if (i > 0) {
            Basis prefix(std::vector<IntVec>(work.rows.begin(), work.rows.begin() + i));
            work.rows[i] = lift_int(prefix, work.rows[i]);
        }
    }
    AbsoluBasis ab;
    ab.gso = gram_schmidt(work);
    ab.basis = std::move(work);
    ab.quality_gamma_sq = gamma_of(kind, n);
    return ab;
}

inline DecodeResult absolu_decode(const AbsoluBasis& ab, const RatVec& t) {
    return nearest_plane(ab.basis, ab.gso, t);
}

// Per-recursion-level data of the CVPP reduction.
struct CvppLevel {
    Basis lattice;     // the lattice decoded at this level
    IntVec c_coeff;    // primitive dual vector through its inner products a_i = <c, b_i>
    RatVec c_vec;      // ambient embedding of c
    Rat c_norm_sq;
    IntVec x_unit;     // lattice point with <c, x_unit> = 1
    Basis kernel;      // {x in lattice : <c, x> = 0}; empty at rank 1
    AbsoluBasis absolu;
};

struct CvppPrecomp {
    std::vector<CvppLevel> levels;
    HsvpOracleKind oracle;
    std::uint64_t oracle_calls = 0;  // measured HSVP calls during precomputation
};

// Rank drops by one per level: short dual vector (via the doubling-chain
// reduction), Bezout point, kernel sublattice, absolute-distance basis.
inline CvppPrecomp cvpp_precompute(const Basis& b, const HsvpOracleKind& kind,
                                   std::optional<HsvpOracleKind> dual_kind = std::nullopt) {
    if (b.rank() == 0) throw error("cvpp_precompute: empty basis");
    HsvpOracleKind dk = dual_kind.value_or(kind);
    CvppPrecomp pre;
    pre.oracle = kind;
    std::uint64_t calls_before = instrument::counters().hsvp;
    Basis cur = b;
    while (cur.rank() >= 1) {
        std::size_t r = cur.rank();
        CvppLevel lvl;
        lvl.lattice = cur;
        if (r == 1) {
            lvl.c_coeff = IntVec{Int(1)};
            Rat nsq(norm_sq(cur.rows[0]));
            lvl.c_vec = scale(to_rat(cur.rows[0]), Rat(1) / nsq);
            lvl.c_norm_sq = 1 / nsq;
            lvl.x_unit = cur.rows[0];
            lvl.absolu = build_absolu_basis(cur, kind);
            pre.levels.push_back(std::move(lvl));
            break;
        }
        auto dual = dual_basis(cur);
        Rat det = covolume_sq(cur);
        std::vector<IntVec> dual_int_rows(r, IntVec(cur.dim()));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cur.dim(); ++j) {
                Rat v = dual[i][j] * det;
                if (v.get_den() != 1) throw error("cvpp_precompute: dual scaling failed");
                dual_int_rows[i][j] = v.get_num();
            }
        IntVec w = lovasz_svp_from_hsvp(Basis(std::move(dual_int_rows)), dk);
        // a_i = <c, b_i> with c = w / det
        IntVec a(r);
        for (std::size_t i = 0; i < r; ++i) {
            Rat q = Rat(dot(w, cur.rows[i])) / det;
            if (q.get_den() != 1) throw error("cvpp_precompute: dual vector not integral");
            a[i] = q.get_num();
        }
        Int g = vec_gcd(a);
        if (sgn(g) == 0) throw error("cvpp_precompute: zero dual vector");
        if (g != 1)
            for (auto& x : a) x /= g;
        a = sign_normalize(std::move(a));
        lvl.c_coeff = a;
        lvl.c_vec.assign(cur.dim(), Rat(0));
        for (std::size_t i = 0; i < r; ++i) axpy(lvl.c_vec, Rat(a[i]), dual[i]);
        lvl.c_norm_sq = norm_sq(lvl.c_vec);
        lvl.kernel = kernel_sublattice(cur, a);
        lvl.x_unit = lift_int(lvl.kernel, bezout_point(cur, a, Int(1)));
        lvl.absolu = build_absolu_basis(cur, kind);
        Basis next = lvl.kernel;
        pre.levels.push_back(std::move(lvl));
        cur = std::move(next);
    }
    pre.oracle_calls = instrument::counters().hsvp - calls_before;
    return pre;
}

namespace detail {

inline DecodeResult cvpp_decode_level(const CvppPrecomp& pre, std::size_t idx, const RatVec& t) {
    const CvppLevel& lvl = pre.levels[idx];
    std::size_t r = lvl.lattice.rank();
    if (r == 1) {
        const IntVec& row = lvl.lattice.rows[0];
        Rat nsq(norm_sq(row));
        Rat coord = dot(t, row) / nsq;
        Int q = round_half_up(coord);
        DecodeResult res;
        res.point = scale(row, q);
        RatVec diff = sub(t, to_rat(res.point));
        res.dist_sq = norm_sq(diff);
        res.per_block_dist_sq = {res.dist_sq};
        return res;
    }
    // large case: decode against the absolute-distance basis
    DecodeResult a = absolu_decode(lvl.absolu, t);
    // small case: pin the inner product with the short dual vector, recurse
    // on the kernel
    Rat ct = dot(lvl.c_vec, t);
    Int s = round_half_up(ct);
    IntVec x_s = scale(lvl.x_unit, s);
    x_s = lift_int(lvl.kernel, x_s);
    RatVec shifted = sub(t, to_rat(x_s));
    Rat along = dot(lvl.c_vec, shifted);  // = s - <c,t>, up to sign
    RatVec projected = shifted;
    axpy(projected, Rat(-along / lvl.c_norm_sq), lvl.c_vec);
    DecodeResult w0 = cvpp_decode_level(pre, idx + 1, projected);
    Rat delta_sq = along * along / lvl.c_norm_sq;
    DecodeResult b;
    b.point = add(x_s, w0.point);
    b.dist_sq = delta_sq + w0.dist_sq;
    b.per_block_dist_sq.reserve(w0.per_block_dist_sq.size() + 1);
    b.per_block_dist_sq.push_back(std::move(delta_sq));
    for (auto& d : w0.per_block_dist_sq) b.per_block_dist_sq.push_back(std::move(d));
    return a.dist_sq <= b.dist_sq ? a : b;
}

}  // namespace detail

// Both proof branches are executed and the exactly closer candidate wins;
// the returned distance is min of the two, which satisfies the approximation
// bound in either case of the dichotomy.
inline DecodeResult cvpp_decode(const CvppPrecomp& pre, const RatVec& t) {
    if (pre.levels.empty()) throw error("cvpp_decode: empty precomputation");
    const CvppLevel& top = pre.levels[0];
    if (top.lattice.rank() == 1) {
        // explicit span check for the rank-1 base case at top level
        const IntVec& row = top.lattice.rows[0];
        Rat nsq(norm_sq(row));
        Rat coord = dot(t, row) / nsq;
        if (coord * coord * nsq != norm_sq(t))
            throw error("cvpp_decode: target outside span of basis");
    }
    return detail::cvpp_decode_level(pre, 0, t);
}

}  // namespace colat
