#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "colat/numeric.hpp"
#include "colat/vec.hpp"

namespace colat {

// Row basis of a lattice: n independent integer rows in ambient dimension m.
struct Basis {
    std::vector<IntVec> rows;

    Basis() = default;
    explicit Basis(std::vector<IntVec> r) : rows(std::move(r)) {
        for (const auto& row : rows)
            if (row.size() != dim()) throw error("Basis: ragged rows");
    }

    std::size_t rank() const { return rows.size(); }
    std::size_t dim() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Projections of b_{s+1..s+k} orthogonally to span(b_1..b_s); represents the
// quotient of the two prefix sublattices.
struct ProjectedBasis {
    std::vector<RatVec> rows;
    std::size_t parent_offset = 0;

    std::size_t rank() const { return rows.size(); }
    std::size_t dim() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Exact Gram-Schmidt data: mu[i][j] = <b_i, b_j*> / ||b_j*||^2 for j < i,
// bstar_sq[i] = ||b_i*||^2.  bstar holds the orthogonalized vectors and may
// be empty on internal fast paths (see gram_schmidt vs. reduction).
struct GSOData {
    std::vector<RatVec> mu;
    RatVec bstar_sq;
    std::vector<RatVec> bstar;

    std::size_t rank() const { return bstar_sq.size(); }
    bool has_bstar() const { return !bstar.empty(); }

    Rat mu_at(std::size_t i, std::size_t j) const {
        if (j == i) return Rat(1);
        if (j > i) return Rat(0);
        return mu[i][j];
    }
};

inline std::vector<IntVec> gram(const Basis& b) {
    std::size_t n = b.rank();
    std::vector<IntVec> g(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            g[i][j] = dot(b.rows[i], b.rows[j]);
            g[j][i] = g[i][j];
        }
    return g;
}

inline std::vector<RatVec> gram(const std::vector<RatVec>& rows) {
    std::size_t n = rows.size();
    std::vector<RatVec> g(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            g[i][j] = dot(rows[i], rows[j]);
            g[j][i] = g[i][j];
        }
    return g;
}

namespace detail {

// Integer GSO tables: d[0]=1, d[i+1] = det Gram(b_1..b_i) and
// lam[i][j] = mu_{i,j} * d[j+1].  All divisions below are exact.
struct GsoTables {
    std::vector<IntVec> lam;
    IntVec d;

    std::size_t rank() const { return d.size() - 1; }
};

inline GsoTables gso_tables_from_gram(const std::vector<IntVec>& g) {
    std::size_t n = g.size();
    GsoTables t;
    t.d.assign(n + 1, Int(1));
    t.lam.assign(n, IntVec());
    for (std::size_t i = 0; i < n; ++i) t.lam[i].assign(i, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Int u = g[i][j];
            for (std::size_t k = 0; k < j; ++k) {
                u = t.d[k + 1] * u - t.lam[i][k] * t.lam[j][k];
                mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), t.d[k].get_mpz_t());
            }
            if (j < i)
                t.lam[i][j] = u;
            else {
                if (sgn(u) <= 0) throw rank_error("gram_schmidt: rows are linearly dependent");
                t.d[i + 1] = u;
            }
        }
    }
    return t;
}

inline GSOData gso_from_tables(const GsoTables& t, const Rat& gram_scale = Rat(1)) {
    std::size_t n = t.rank();
    GSOData g;
    g.mu.assign(n, RatVec());
    g.bstar_sq.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        g.mu[i].assign(i, Rat(0));
        for (std::size_t j = 0; j < i; ++j) {
            Rat m(t.lam[i][j], t.d[j + 1]);
            m.canonicalize();
            g.mu[i][j] = m;
        }
        Rat bs(t.d[i + 1], t.d[i]);
        bs.canonicalize();
        g.bstar_sq[i] = bs / gram_scale;
    }
    return g;
}

inline Int denominator_lcm(const std::vector<RatVec>& rows) {
    Int l = 1;
    for (const auto& row : rows)
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    return l;
}

// GSO of a rational Gram matrix: scale to an integer Gram (uniform scaling
// leaves mu unchanged, multiplies bstar_sq by the scale).
inline GSOData gso_from_rat_gram(const std::vector<RatVec>& g) {
    Int l = denominator_lcm(g);
    std::size_t n = g.size();
    std::vector<IntVec> gi(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = g[i][j] * l;
            gi[i][j] = v.get_num();
        }
    return gso_from_tables(gso_tables_from_gram(gi), Rat(l));
}

}  // namespace detail

// Fills gso.bstar from basis rows: b_i* = b_i - sum_{j<i} mu_{i,j} b_j*.
template <class Rows>
inline void compute_bstar(const Rows& rows, GSOData& gso) {
    std::size_t n = gso.rank();
    gso.bstar.assign(n, RatVec());
    for (std::size_t i = 0; i < n; ++i) {
        RatVec v = [&] {
            if constexpr (std::is_same_v<typename Rows::value_type, IntVec>)
                return to_rat(rows[i]);
            else
                return rows[i];
        }();
        for (std::size_t j = 0; j < i; ++j) axpy(v, Rat(-gso.mu[i][j]), gso.bstar[j]);
        gso.bstar[i] = std::move(v);
    }
}

inline GSOData gram_schmidt(const Basis& b) {
    GSOData g = detail::gso_from_tables(detail::gso_tables_from_gram(gram(b)));
    compute_bstar(b.rows, g);
    return g;
}

inline GSOData gram_schmidt(const ProjectedBasis& b) {
    GSOData g = detail::gso_from_rat_gram(gram(b.rows));
    compute_bstar(b.rows, g);
    return g;
}

// GSO without the orthogonalized vectors (mu and bstar_sq only); enough for
// enumeration and decoding.
inline GSOData gso_profile(const Basis& b) {
    return detail::gso_from_tables(detail::gso_tables_from_gram(gram(b)));
}

inline GSOData gso_profile(const ProjectedBasis& b) {
    return detail::gso_from_rat_gram(gram(b.rows));
}

inline ProjectedBasis project_block(const Basis& b, const GSOData& gso, std::size_t start,
                                    std::size_t len) {
    if (len < 1 || start + len > b.rank()) throw error("project_block: indices out of range");
    if (!gso.has_bstar()) throw error("project_block: gso lacks orthogonalized vectors");
    ProjectedBasis p;
    p.parent_offset = start;
    p.rows.reserve(len);
    for (std::size_t q = start; q < start + len; ++q) {
        RatVec v = to_rat(b.rows[q]);
        for (std::size_t j = 0; j < start; ++j) axpy(v, Rat(-gso.mu[q][j]), gso.bstar[j]);
        p.rows.push_back(std::move(v));
    }
    return p;
}

inline Rat covolume_sq(const Basis& b) {
    if (b.rank() == 0) return Rat(1);
    auto t = detail::gso_tables_from_gram(gram(b));
    return Rat(t.d[b.rank()]);
}

// Solves A x = rhs for square rational A by exact Gaussian elimination.
inline std::vector<RatVec> rat_solve(std::vector<RatVec> a, std::vector<RatVec> rhs) {
    std::size_t n = a.size();
    if (rhs.size() != n) throw error("rat_solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw rank_error("rat_solve: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            for (std::size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        Rat inv = 1 / a[r][r];
        for (auto& x : rhs[r]) x *= inv;
    }
    return rhs;
}

// Rows d_i with <d_i, b_j> = delta_ij; they span the same subspace as the
// basis, so this is the dual basis of the lattice.
inline std::vector<RatVec> dual_basis(const Basis& b) {
    if (b.rank() == 0) throw error("dual_basis: empty basis");
    auto g = gram(b);
    std::size_t n = b.rank();
    std::vector<RatVec> ga(n, RatVec(n));
    std::vector<RatVec> rhs(n, RatVec(b.dim()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ga[i][j] = Rat(g[i][j]);
        rhs[i] = to_rat(b.rows[i]);
    }
    return rat_solve(std::move(ga), std::move(rhs));
}

namespace detail {

// Unimodular V (with inverse) such that V * a^T = (g, 0, ..., 0)^T, g > 0.
struct ColumnElim {
    std::vector<IntVec> v;
    std::vector<IntVec> v_inv;
    Int g;
};

inline ColumnElim gcd_column_elim(const IntVec& a) {
    std::size_t n = a.size();
    ColumnElim r;
    r.v.assign(n, IntVec(n, Int(0)));
    r.v_inv.assign(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) r.v[i][i] = r.v_inv[i][i] = 1;
    IntVec w = a;
    for (std::size_t i = 1; i < n; ++i) {
        if (sgn(w[i]) == 0) continue;
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), w[0].get_mpz_t(),
                   w[i].get_mpz_t());
        Int p = w[0] / g, q = w[i] / g;
        // rows 0 and i of V: [x y; -q p], inverse applied to V^-1 columns
        for (std::size_t c = 0; c < n; ++c) {
            Int r0 = x * r.v[0][c] + y * r.v[i][c];
            Int ri = -q * r.v[0][c] + p * r.v[i][c];
            r.v[0][c] = r0;
            r.v[i][c] = ri;
        }
        for (std::size_t rr = 0; rr < n; ++rr) {
            Int c0 = p * r.v_inv[rr][0] + q * r.v_inv[rr][i];
            Int ci = -y * r.v_inv[rr][0] + x * r.v_inv[rr][i];
            r.v_inv[rr][0] = c0;
            r.v_inv[rr][i] = ci;
        }
        w[0] = g;
        w[i] = 0;
    }
    if (sgn(w[0]) < 0) {
        for (std::size_t c = 0; c < n; ++c) r.v[0][c] = -r.v[0][c];
        for (std::size_t rr = 0; rr < n; ++rr) r.v_inv[rr][0] = -r.v_inv[rr][0];
        w[0] = -w[0];
    }
    r.g = w[0];
    return r;
}

// Clears denominators: integer basis of the lattice scaled by the lcm of all
// entry denominators (uniform scaling, so reduction and enumeration commute
// with it).
inline Basis scale_to_integer(const ProjectedBasis& p, Int* scale_out = nullptr) {
    Int l = denominator_lcm(p.rows);
    std::vector<IntVec> rows(p.rank(), IntVec(p.dim()));
    for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = 0; j < p.dim(); ++j) {
            Rat v = p.rows[i][j] * l;
            rows[i][j] = v.get_num();
        }
    if (scale_out) *scale_out = l;
    return Basis(std::move(rows));
}

}  // namespace detail

// Basis of {x in L : <c, x> = 0} where c is given through its integer inner
// products a_i = <c, b_i>.  Rank n-1; rows sign-normalized.
inline Basis kernel_sublattice(const Basis& b, const IntVec& a) {
    if (a.size() != b.rank()) throw error("kernel_sublattice: coefficient length mismatch");
    if (is_zero(a)) throw error("kernel_sublattice: zero dual vector");
    auto elim = detail::gcd_column_elim(a);
    std::vector<IntVec> rows;
    rows.reserve(b.rank() - 1);
    for (std::size_t i = 1; i < b.rank(); ++i) {
        IntVec x(b.dim(), Int(0));
        for (std::size_t j = 0; j < b.rank(); ++j) axpy(x, elim.v[i][j], b.rows[j]);
        rows.push_back(sign_normalize(std::move(x)));
    }
    return Basis(std::move(rows));
}

// Lattice point x with <c, x> = s; requires gcd(a_i) | s.
inline IntVec bezout_point(const Basis& b, const IntVec& a, const Int& s) {
    if (a.size() != b.rank()) throw error("bezout_point: coefficient length mismatch");
    if (is_zero(a)) throw error("bezout_point: zero dual vector");
    if (sgn(s) == 0) return IntVec(b.dim(), Int(0));
    auto elim = detail::gcd_column_elim(a);
    if (!mpz_divisible_p(s.get_mpz_t(), elim.g.get_mpz_t()))
        throw error("bezout_point: gcd of inner products does not divide target (dual vector not primitive)");
    Int f = s / elim.g;
    IntVec x(b.dim(), Int(0));
    for (std::size_t j = 0; j < b.rank(); ++j) axpy(x, Int(f * elim.v[0][j]), b.rows[j]);
    return x;
}

// Completes a primitive integer vector to a unimodular matrix having it as
// first row.
inline std::vector<IntVec> unimodular_completion(const IntVec& a) {
    auto elim = detail::gcd_column_elim(a);
    if (elim.g != 1) throw error("unimodular_completion: vector is not primitive");
    std::size_t n = a.size();
    std::vector<IntVec> u(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u[i][j] = elim.v_inv[j][i];
    return u;
}

// Exact coordinates of v in the row span of b (solves x B = v through the
// Gram matrix, then verifies).  Throws if v is outside the span.
inline RatVec coords_in_span(const Basis& b, const RatVec& v) {
    std::size_t n = b.rank();
    auto g = gram(b);
    std::vector<RatVec> ga(n, RatVec(n));
    std::vector<RatVec> rhs(n, RatVec(1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ga[i][j] = Rat(g[i][j]);
        rhs[i][0] = dot(v, b.rows[i]);
    }
    auto x = rat_solve(std::move(ga), std::move(rhs));
    RatVec coords(n);
    RatVec recon(b.dim(), Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        coords[i] = x[i][0];
        axpy(recon, coords[i], to_rat(b.rows[i]));
    }
    if (recon != v) throw error("coords_in_span: vector outside span");
    return coords;
}

// Integer coordinates of a lattice vector in the given basis.
inline IntVec lattice_coords(const Basis& b, const IntVec& v) {
    RatVec c = coords_in_span(b, to_rat(v));
    IntVec z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].get_den() != 1) throw error("lattice_coords: vector not in the lattice");
        z[i] = c[i].get_num();
    }
    return z;
}

// Coordinates of t in the orthogonalized frame: tau_i = <t, b_i*> / ||b_i*||^2,
// computed by the recurrence <t,b_i*> = <t,b_i> - sum_{j<i} mu_{i,j} <t,b_j*>.
template <class Rows>
inline RatVec gso_coords(const Rows& rows, const GSOData& gso, const RatVec& t) {
    std::size_t n = gso.rank();
    RatVec tb(n), tau(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat acc = dot(t, rows[i]);
        for (std::size_t j = 0; j < i; ++j) acc -= gso.mu[i][j] * tb[j];
        tb[i] = acc;
        tau[i] = acc / gso.bstar_sq[i];
    }
    return tau;
}

// t lies in the row span iff ||t||^2 = sum tau_i^2 ||b_i*||^2 (Parseval).
inline bool in_span(const GSOData& gso, const RatVec& tau, const RatVec& t) {
    Rat s = 0;
    for (std::size_t i = 0; i < gso.rank(); ++i) s += tau[i] * tau[i] * gso.bstar_sq[i];
    return s == norm_sq(t);
}

}  // namespace colat
