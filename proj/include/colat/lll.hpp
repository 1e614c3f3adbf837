#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "colat/instrument.hpp"
#include "colat/linalg.hpp"

namespace colat {

struct ReducedBasis {
    Basis basis;
    GSOData gso;  // mu and bstar_sq of the reduced basis (no bstar vectors)
};

namespace detail {

// Integer-only LLL on the lam/d tables (de Weger's variant): every quantity
// stays an exact integer, so the output invariants are exact statements.
class LllEngine {
  public:
    LllEngine(Basis b, Rat delta) : b_(std::move(b)), delta_(std::move(delta)) {
        if (delta_ <= make_rat(1, 4) || delta_ >= 1) throw error("lll: delta outside (1/4, 1)");
        tab_ = gso_tables_from_gram(gram(b_));
        n_ = b_.rank();
    }

    ReducedBasis run() {
        std::size_t k = 1;
        while (k < n_) {
            size_reduce(k, k - 1);
            if (!lovasz_ok(k)) {
                swap_rows(k);
                k = std::max<std::size_t>(k, 2) - 1;
            } else {
                for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
                ++k;
            }
        }
        return ReducedBasis{std::move(b_), gso_from_tables(tab_)};
    }

  private:
    void size_reduce(std::size_t k, std::size_t l) {
        Int two_abs = 2 * abs(tab_.lam[k][l]);
        if (two_abs <= tab_.d[l + 1]) return;
        Rat q_rat(tab_.lam[k][l], tab_.d[l + 1]);
        q_rat.canonicalize();
        Int q = round_half_up(q_rat);
        axpy(b_.rows[k], Int(-q), b_.rows[l]);
        tab_.lam[k][l] -= q * tab_.d[l + 1];
        for (std::size_t j = 0; j < l; ++j) tab_.lam[k][j] -= q * tab_.lam[l][j];
    }

    bool lovasz_ok(std::size_t k) const {
        // bstar_k^2 >= (delta - mu^2) bstar_{k-1}^2 in cleared-denominator form
        const Int& p = delta_.get_num();
        const Int& q = delta_.get_den();
        Int lhs = q * tab_.d[k + 1] * tab_.d[k - 1];
        Int rhs = p * tab_.d[k] * tab_.d[k] - q * tab_.lam[k][k - 1] * tab_.lam[k][k - 1];
        return lhs >= rhs;
    }

    void swap_rows(std::size_t k) {
        std::swap(b_.rows[k], b_.rows[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(tab_.lam[k][j], tab_.lam[k - 1][j]);
        Int lam_bar = tab_.lam[k][k - 1];
        Int b_new = tab_.d[k - 1] * tab_.d[k + 1] + lam_bar * lam_bar;
        mpz_divexact(b_new.get_mpz_t(), b_new.get_mpz_t(), tab_.d[k].get_mpz_t());
        for (std::size_t i = k + 1; i < n_; ++i) {
            Int old_km1 = tab_.lam[i][k - 1];
            Int old_k = tab_.lam[i][k];
            Int t = tab_.d[k + 1] * old_km1 - lam_bar * old_k;
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), tab_.d[k].get_mpz_t());
            tab_.lam[i][k] = t;
            t = lam_bar * old_km1 + tab_.d[k - 1] * old_k;
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), tab_.d[k].get_mpz_t());
            tab_.lam[i][k - 1] = t;
        }
        tab_.d[k] = b_new;
    }

    Basis b_;
    Rat delta_;
    GsoTables tab_;
    std::size_t n_ = 0;
};

}  // namespace detail

inline ReducedBasis lll_reduce(Basis b, const Rat& delta = make_rat(99, 100)) {
    instrument::count_lll();
    if (b.rank() <= 1) {
        GSOData gso = gso_profile(b);
        return ReducedBasis{std::move(b), std::move(gso)};
    }
    return detail::LllEngine(std::move(b), delta).run();
}

// Size-reduced basis of the same lattice satisfying the Lovasz condition.
inline Basis lll(const Basis& b, const Rat& delta = make_rat(99, 100)) {
    return lll_reduce(b, delta).basis;
}

}  // namespace colat
