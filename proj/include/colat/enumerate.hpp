#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "colat/instrument.hpp"
#include "colat/linalg.hpp"
#include "colat/lll.hpp"

namespace colat {

// Coefficient vector w.r.t. the enumerated basis together with the exact
// squared norm / squared distance it achieves.
struct EnumResult {
    IntVec coeffs;
    Rat dist_sq;
};

namespace detail {

constexpr int kEnumMaxRank = 30;

// Multiplicative slack applied to the floating-point pruning radius; leaves
// inside the slack band are settled in exact arithmetic.
inline double inflate(const Rat& dist_sq) {
    return rat_to_double(dist_sq) * (1.0 + 0x1p-20) + 0x1p-1000;
}

// Branch-and-bound over one projected block [start, start+len) of a GSO.
// The tree walk runs in doubles; every candidate leaf is re-verified with
// exact rationals before it may become the incumbent, so results are exact.
class BlockEnum {
  public:
    BlockEnum(const GSOData& gso, std::size_t start, std::size_t len, RatVec target, bool svp)
        : gso_(gso), start_(start), len_(int(len)), c_exact_(std::move(target)), svp_(svp) {
        if (len < 1) throw error("enumeration: empty block");
        if (len > kEnumMaxRank) throw error("enumeration: rank above desk-scale guard (30)");
        if (start + len > gso.rank()) throw error("enumeration: block out of range");
        mu_d_.assign(len, std::vector<double>(len, 0.0));
        for (int i = 0; i < len_; ++i)
            for (int j = 0; j < i; ++j) mu_d_[i][j] = rat_to_double(gso_.mu[start + i][start + j]);
        b_d_.resize(len);
        for (int i = 0; i < len_; ++i) b_d_[i] = rat_to_double(gso_.bstar_sq[start + i]);
        c_d_.resize(len);
        for (int i = 0; i < len_; ++i) c_d_[i] = rat_to_double(c_exact_[i]);
        x_.assign(len, 0);
    }

    void collect_ties() { collect_ties_ = true; }
    const std::vector<IntVec>& ties() const { return ties_; }

    // `initial` must be a valid candidate; it seeds the pruning radius.
    EnumResult run(EnumResult initial) {
        best_ = std::move(initial);
        bound_d_ = inflate(best_.dist_sq);
        if (collect_ties_) ties_.assign(1, best_.coeffs);
        if (!svp_ && sgn(best_.dist_sq) == 0) return best_;  // exact hit, nothing closer
        descend(len_ - 1, 0.0);
        return best_;
    }

  private:
    void descend(int i, double partial) {
        if (done_) return;
        if (i < 0) {
            leaf();
            return;
        }
        double center = c_d_[i];
        for (int j = i + 1; j < len_; ++j) center -= double(x_[j]) * mu_d_[j][i];
        long x0 = std::lround(center);
        long s = (center - double(x0)) >= 0.0 ? 1 : -1;
        for (long k = 0;; ++k) {
            long xv = (k == 0) ? x0 : (k % 2 ? x0 + s * ((k + 1) / 2) : x0 - s * (k / 2));
            double y = double(xv) - center;
            double li = partial + y * y * b_d_[i];
            // |x - center| is nondecreasing along the zig-zag, so the first
            // failure closes the level
            if (li > bound_d_) return;
            x_[i] = xv;
            descend(i - 1, li);
            if (done_) return;
        }
    }

    void leaf() {
        bool all_zero = true;
        for (int j = 0; j < len_ && all_zero; ++j) all_zero = (x_[j] == 0);
        if (svp_ && all_zero) return;
        // exact distance of the current coefficient vector
        Rat d(0);
        for (int j = len_ - 1; j >= 0; --j) {
            Rat acc(x_[j]);
            for (int l = j + 1; l < len_; ++l)
                acc += Int(x_[l]) * gso_.mu[start_ + l][start_ + j];
            acc -= c_exact_[j];
            d += acc * acc * gso_.bstar_sq[start_ + j];
        }
        if (d > best_.dist_sq) return;
        IntVec cand(len_);
        for (int j = 0; j < len_; ++j) cand[j] = Int(x_[j]);
        if (svp_) cand = sign_normalize(std::move(cand));
        if (d < best_.dist_sq) {
            if (collect_ties_) ties_.assign(1, cand);
            best_.coeffs = std::move(cand);
            best_.dist_sq = std::move(d);
            bound_d_ = inflate(best_.dist_sq);
            if (!svp_ && sgn(best_.dist_sq) == 0) done_ = true;
            return;
        }
        // exact tie
        if (collect_ties_ && cand != best_.coeffs) ties_.push_back(cand);
        if (lex_less(cand, best_.coeffs)) best_.coeffs = std::move(cand);
    }

    const GSOData& gso_;
    std::size_t start_;
    int len_;
    RatVec c_exact_;
    bool svp_;
    std::vector<std::vector<double>> mu_d_;
    std::vector<double> b_d_;
    std::vector<double> c_d_;
    std::vector<long> x_;
    EnumResult best_;
    double bound_d_ = 0.0;
    bool done_ = false;
    bool collect_ties_ = false;
    std::vector<IntVec> ties_;
};

// Nearest-plane coefficients in block coordinates.  The loop runs on the
// negated target with half-up ties, which matches the lexicographic tie rule
// of exact enumeration on one-dimensional blocks.
inline EnumResult nearest_plane_block(const GSOData& gso, std::size_t start, std::size_t len,
                                      const RatVec& tau_block) {
    RatVec s(len);
    for (std::size_t i = 0; i < len; ++i) s[i] = -tau_block[i];
    IntVec coeffs(len, Int(0));
    Rat dist(0);
    for (std::size_t ii = len; ii-- > 0;) {
        Rat coord = s[ii];
        Int c = round_half_up(coord);
        Rat frac = coord - Rat(c);
        dist += frac * frac * gso.bstar_sq[start + ii];
        coeffs[ii] = -c;
        // subtracting c*b_ii shifts the lower coordinates by c*mu
        for (std::size_t j = 0; j < ii; ++j) s[j] -= c * gso.mu[start + ii][start + j];
    }
    return EnumResult{std::move(coeffs), std::move(dist)};
}

// CVP tree search around a precomputed nearest-plane seed: `shifted` holds
// the target coordinates recentered on the seed point (so the search runs
// around the origin), `np` the seed coefficients and exact seed distance.
inline EnumResult enum_cvp_block_seeded(const GSOData& gso, std::size_t start, std::size_t len,
                                        RatVec shifted, const EnumResult& np,
                                        std::vector<IntVec>* ties = nullptr) {
    instrument::count_cvp_enum();
    BlockEnum be(gso, start, len, std::move(shifted), false);
    if (ties) be.collect_ties();
    EnumResult r = be.run(EnumResult{IntVec(len, Int(0)), np.dist_sq});
    for (std::size_t j = 0; j < len; ++j) r.coeffs[j] += np.coeffs[j];
    if (ties) {
        *ties = be.ties();
        for (auto& tv : *ties)
            for (std::size_t j = 0; j < len; ++j) tv[j] += np.coeffs[j];
    }
    return r;
}

// Exact CVP in the block lattice spanned by the projections of rows
// [start, start+len); tau_block holds the GSO-frame target coordinates.
inline EnumResult enum_cvp_block(const GSOData& gso, std::size_t start, std::size_t len,
                                 const RatVec& tau_block, std::vector<IntVec>* ties = nullptr) {
    EnumResult np = nearest_plane_block(gso, start, len, tau_block);
    // recenter on the nearest-plane point: keeps doubles well-conditioned for
    // far-away targets and seeds the radius
    RatVec shifted(len);
    for (std::size_t j = 0; j < len; ++j) {
        Rat acc = tau_block[j] - Rat(np.coeffs[j]);
        for (std::size_t l = j + 1; l < len; ++l)
            acc -= np.coeffs[l] * gso.mu[start + l][start + j];
        shifted[j] = std::move(acc);
    }
    return enum_cvp_block_seeded(gso, start, len, std::move(shifted), np, ties);
}

// Exact SVP in the block lattice; ties resolved by sign-normalized
// lexicographically smallest coefficients.
inline EnumResult enum_svp_block(const GSOData& gso, std::size_t start, std::size_t len,
                                 std::vector<IntVec>* ties = nullptr) {
    instrument::count_svp_enum();
    // seed with the best single basis vector of the block
    EnumResult init;
    for (std::size_t i = 0; i < len; ++i) {
        Rat d(0);
        for (std::size_t j = 0; j <= i; ++j) {
            Rat m = (j == i) ? Rat(1) : gso.mu[start + i][start + j];
            d += m * m * gso.bstar_sq[start + j];
        }
        IntVec e(len, Int(0));
        e[i] = 1;
        if (init.coeffs.empty() || d < init.dist_sq ||
            (d == init.dist_sq && lex_less(e, init.coeffs))) {
            init.coeffs = std::move(e);
            init.dist_sq = std::move(d);
        }
    }
    BlockEnum be(gso, start, len, RatVec(len, Rat(0)), true);
    if (ties) be.collect_ties();
    EnumResult r = be.run(std::move(init));
    if (ties) *ties = be.ties();
    return r;
}

// Integer model of a basis-like object: identity for integer bases, cleared
// denominators for projected ones.  dist_scale maps model distances back.
inline Basis enum_model(const Basis& b, Rat& dist_scale, Rat& target_scale) {
    dist_scale = 1;
    target_scale = 1;
    return b;
}

inline Basis enum_model(const ProjectedBasis& b, Rat& dist_scale, Rat& target_scale) {
    Int l(1);
    Basis model = scale_to_integer(b, &l);
    dist_scale = Rat(l * l);
    target_scale = Rat(l);
    return model;
}

// Resolves ties against the documented rule: lexicographically smallest
// coefficient vector w.r.t. the *input* basis (sign-normalized for SVP).
inline EnumResult map_to_input(const Basis& model, const Basis& reduced,
                               const std::vector<IntVec>& ties, const Rat& dist,
                               const Rat& dist_scale, bool svp) {
    EnumResult out;
    out.dist_sq = dist / dist_scale;
    for (const auto& tv : ties) {
        IntVec v(model.dim(), Int(0));
        for (std::size_t i = 0; i < tv.size(); ++i) axpy(v, tv[i], reduced.rows[i]);
        IntVec coeffs = lattice_coords(model, v);
        if (svp) coeffs = sign_normalize(std::move(coeffs));
        if (out.coeffs.empty() || lex_less(coeffs, out.coeffs)) out.coeffs = std::move(coeffs);
    }
    return out;
}

}  // namespace detail

// Shortest nonzero vector, exactly (tie rule: sign-normalized lexicographic
// minimum of the coefficient vector).  The input basis is reduced internally
// before the tree search; results are reported w.r.t. the input basis.
template <class BasisLike>
inline EnumResult svp_enum(const BasisLike& b) {
    if (b.rank() < 1) throw error("svp_enum: empty basis");
    if (b.rank() > std::size_t(detail::kEnumMaxRank))
        throw error("svp_enum: rank above desk-scale guard (30)");
    Rat dist_scale, target_scale;
    Basis model = detail::enum_model(b, dist_scale, target_scale);
    ReducedBasis red = lll_reduce(model);
    std::vector<IntVec> ties;
    EnumResult r = detail::enum_svp_block(red.gso, 0, b.rank(), &ties);
    return detail::map_to_input(model, red.basis, ties, r.dist_sq, dist_scale, true);
}

template <class BasisLike>
inline EnumResult cvp_enum(const BasisLike& b, const RatVec& t) {
    if (b.rank() < 1) throw error("cvp_enum: empty basis");
    if (b.rank() > std::size_t(detail::kEnumMaxRank))
        throw error("cvp_enum: rank above desk-scale guard (30)");
    Rat dist_scale, target_scale;
    Basis model = detail::enum_model(b, dist_scale, target_scale);
    ReducedBasis red = lll_reduce(model);
    RatVec tm = scale(t, target_scale);
    RatVec tau = gso_coords(red.basis.rows, red.gso, tm);
    if (!in_span(red.gso, tau, tm)) throw error("cvp_enum: target outside span of basis");
    std::vector<IntVec> ties;
    EnumResult r = detail::enum_cvp_block(red.gso, 0, b.rank(), tau, &ties);
    return detail::map_to_input(model, red.basis, ties, r.dist_sq, dist_scale, false);
}

template <class BasisLike>
inline std::vector<EnumResult> enum_batch(const BasisLike& b, const std::vector<RatVec>& targets) {
    if (targets.empty()) return {};
    Rat dist_scale, target_scale;
    Basis model = detail::enum_model(b, dist_scale, target_scale);
    ReducedBasis red = lll_reduce(model);
    std::vector<EnumResult> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        RatVec tm = scale(t, target_scale);
        RatVec tau = gso_coords(red.basis.rows, red.gso, tm);
        if (!in_span(red.gso, tau, tm)) throw error("enum_batch: target outside span of basis");
        std::vector<IntVec> ties;
        EnumResult r = detail::enum_cvp_block(red.gso, 0, b.rank(), tau, &ties);
        out.push_back(detail::map_to_input(model, red.basis, ties, r.dist_sq, dist_scale, false));
    }
    return out;
}

// Ambient lattice vector from block coefficients.
inline IntVec coeffs_to_vector(const Basis& b, const IntVec& coeffs, std::size_t start = 0) {
    IntVec v(b.dim(), Int(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) axpy(v, coeffs[i], b.rows[start + i]);
    return v;
}

}  // namespace colat
