#include "colat/linalg.hpp"

#include <gtest/gtest.h>

#include "colat/latgen.hpp"
#include "colat/lll.hpp"
#include "support.hpp"

using namespace colat;

namespace {

Basis make_basis(std::vector<std::vector<long>> rows) {
    std::vector<IntVec> r;
    for (auto& row : rows) {
        IntVec v;
        for (long x : row) v.push_back(Int(x));
        r.push_back(std::move(v));
    }
    return Basis(std::move(r));
}

RatVec rvec(std::vector<std::pair<long, long>> entries) {
    RatVec v;
    for (auto [p, q] : entries) v.push_back(make_rat(p, q));
    return v;
}

TEST(GramSchmidt, IdentityIsOrthonormal) {
    Basis b = make_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    GSOData g = gram_schmidt(b);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(g.bstar_sq[i], Rat(1));
        EXPECT_EQ(g.mu_at(i, i), Rat(1));
        for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(g.mu[i][j], Rat(0));
    }
}

TEST(GramSchmidt, HandExample) {
    Basis b = make_basis({{1, 0}, {1, 2}});
    GSOData g = gram_schmidt(b);
    EXPECT_EQ(g.bstar[0], rvec({{1, 1}, {0, 1}}));
    EXPECT_EQ(g.bstar[1], rvec({{0, 1}, {2, 1}}));
    EXPECT_EQ(g.mu[1][0], Rat(1));
}

TEST(GramSchmidt, CofactorDeterminant) {
    Basis b = make_basis({{2, 1}, {1, 3}});
    GSOData g = gram_schmidt(b);
    EXPECT_EQ(g.bstar_sq[0], Rat(5));
    EXPECT_EQ(g.bstar_sq[1], Rat(5));
    EXPECT_EQ(g.bstar_sq[0] * g.bstar_sq[1], covolume_sq(b));
    EXPECT_EQ(covolume_sq(b), Rat(25));
}

TEST(GramSchmidt, DependentRowsSignalRankError) {
    Basis b = make_basis({{1, 2}, {2, 4}});
    EXPECT_THROW(gram_schmidt(b), rank_error);
}

TEST(GramSchmidt, ReconstructionAndOrthogonality) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Basis b = oracle::reduced_gm(5, seed);
        GSOData g = gram_schmidt(b);
        Rat prod(1);
        for (std::size_t i = 0; i < b.rank(); ++i) {
            prod *= g.bstar_sq[i];
            // b_i = b_i* + sum_{j<i} mu_ij b_j*
            RatVec v = g.bstar[i];
            for (std::size_t j = 0; j < i; ++j) axpy(v, Rat(g.mu[i][j]), g.bstar[j]);
            EXPECT_EQ(v, to_rat(b.rows[i]));
            for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(dot(g.bstar[i], g.bstar[j]), Rat(0));
        }
        EXPECT_EQ(prod, covolume_sq(b));
    }
}

TEST(ProjectBlock, StartZeroIsIdentity) {
    Basis b = make_basis({{2, 1}, {1, 3}});
    GSOData g = gram_schmidt(b);
    ProjectedBasis p = project_block(b, g, 0, 2);
    EXPECT_EQ(p.rows[0], to_rat(b.rows[0]));
    EXPECT_EQ(p.rows[1], to_rat(b.rows[1]));
}

TEST(ProjectBlock, OrthogonalInput) {
    Basis b = make_basis({{1, 0}, {0, 1}});
    GSOData g = gram_schmidt(b);
    ProjectedBasis p = project_block(b, g, 1, 1);
    EXPECT_EQ(p.rows[0], rvec({{0, 1}, {1, 1}}));
}

TEST(ProjectBlock, MatchesGso) {
    Basis b = make_basis({{1, 0}, {1, 2}});
    GSOData g = gram_schmidt(b);
    ProjectedBasis p = project_block(b, g, 1, 1);
    EXPECT_EQ(p.rows[0], rvec({{0, 1}, {2, 1}}));
    EXPECT_THROW(project_block(b, g, 1, 2), error);
}

TEST(DualBasis, Identity) {
    Basis b = make_basis({{1, 0}, {0, 1}});
    auto d = dual_basis(b);
    EXPECT_EQ(d[0], rvec({{1, 1}, {0, 1}}));
    EXPECT_EQ(d[1], rvec({{0, 1}, {1, 1}}));
}

TEST(DualBasis, DiagonalInverse) {
    Basis b = make_basis({{2, 0}, {0, 3}});
    auto d = dual_basis(b);
    EXPECT_EQ(d[0], rvec({{1, 2}, {0, 1}}));
    EXPECT_EQ(d[1], rvec({{0, 1}, {1, 3}}));
}

TEST(DualBasis, TwoByTwoInverseTranspose) {
    Basis b = make_basis({{2, 1}, {1, 3}});
    auto d = dual_basis(b);
    EXPECT_EQ(d[0], rvec({{3, 5}, {-1, 5}}));
    EXPECT_EQ(d[1], rvec({{-1, 5}, {2, 5}}));
}

TEST(DualBasis, BiorthogonalOnRandomInstances) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Basis b = oracle::reduced_gm(4, seed);
        auto d = dual_basis(b);
        for (std::size_t i = 0; i < b.rank(); ++i)
            for (std::size_t j = 0; j < b.rank(); ++j)
                EXPECT_EQ(dot(d[i], b.rows[j]), i == j ? Rat(1) : Rat(0));
    }
}

TEST(KernelSublattice, SymmetricPair) {
    Basis z2 = make_basis({{1, 0}, {0, 1}});
    Basis k = kernel_sublattice(z2, {Int(1), Int(1)});
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_EQ(k.rows[0], (IntVec{Int(1), Int(-1)}));
    Basis k2 = kernel_sublattice(z2, {Int(1), Int(0)});
    EXPECT_EQ(k2.rows[0], (IntVec{Int(0), Int(1)}));
}

TEST(KernelSublattice, ExtendedGcdExample) {
    Basis z3 = make_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    Basis k = kernel_sublattice(z3, {Int(2), Int(3), Int(0)});
    ASSERT_EQ(k.rank(), 2u);
    EXPECT_EQ(k.rows[0], (IntVec{Int(3), Int(-2), Int(0)}));
    EXPECT_EQ(k.rows[1], (IntVec{Int(0), Int(0), Int(1)}));
    EXPECT_NE(covolume_sq(k), Rat(0));
}

TEST(KernelSublattice, SaturatedOnSmallInstances) {
    // every lattice point with <c,x>=0 is an integer combination of the
    // kernel rows (exhaustive coefficient search)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        Basis b = oracle::reduced_gm(3, seed);
        IntVec a{Int(2), Int(-3), Int(1)};
        Basis k = kernel_sublattice(b, a);
        for (long u0 = -3; u0 <= 3; ++u0)
            for (long u1 = -3; u1 <= 3; ++u1)
                for (long u2 = -3; u2 <= 3; ++u2) {
                    Int ip = Int(u0) * a[0] + Int(u1) * a[1] + Int(u2) * a[2];
                    if (sgn(ip) != 0) continue;
                    IntVec x(b.dim(), Int(0));
                    axpy(x, Int(u0), b.rows[0]);
                    axpy(x, Int(u1), b.rows[1]);
                    axpy(x, Int(u2), b.rows[2]);
                    if (is_zero(x)) continue;
                    EXPECT_NO_THROW(lattice_coords(k, x));
                }
    }
    EXPECT_THROW(kernel_sublattice(make_basis({{1, 0}, {0, 1}}), {Int(0), Int(0)}), error);
}

TEST(BezoutPoint, ExtendedGcd) {
    Basis z2 = make_basis({{1, 0}, {0, 1}});
    EXPECT_EQ(bezout_point(z2, {Int(2), Int(3)}, Int(1)), (IntVec{Int(-1), Int(1)}));
    EXPECT_EQ(bezout_point(z2, {Int(2), Int(3)}, Int(0)), (IntVec{Int(0), Int(0)}));
    EXPECT_EQ(bezout_point(z2, {Int(1), Int(0)}, Int(7)), (IntVec{Int(7), Int(0)}));
    EXPECT_THROW(bezout_point(z2, {Int(2), Int(4)}, Int(1)), error);
}

TEST(BezoutPoint, InnerProductContract) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Basis b = oracle::reduced_gm(4, seed);
        IntVec a{Int(3), Int(5), Int(-2), Int(7)};
        for (long s : {-4L, 1L, 9L}) {
            IntVec x = bezout_point(b, a, Int(s));
            IntVec coeffs = lattice_coords(b, x);
            Int ip(0);
            for (std::size_t i = 0; i < 4; ++i) ip += coeffs[i] * a[i];
            EXPECT_EQ(ip, Int(s));
        }
    }
}

TEST(UnimodularCompletion, FirstRowAndDeterminant) {
    IntVec a{Int(6), Int(10), Int(15)};  // gcd 1, pairwise composite
    auto u = unimodular_completion(a);
    EXPECT_EQ(u[0], a);
    Basis ub(u);
    EXPECT_EQ(covolume_sq(ub), Rat(1));  // det^2 = 1
    EXPECT_THROW(unimodular_completion(IntVec{Int(2), Int(4)}), error);
}

TEST(Covolume, Scaling) {
    Basis b = make_basis({{2, 1}, {1, 3}});
    EXPECT_EQ(covolume_sq(b), Rat(25));
    Basis scaled = b;
    for (auto& x : scaled.rows[0]) x *= 2;
    EXPECT_EQ(covolume_sq(scaled), Rat(100));
    Basis zn = make_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(covolume_sq(zn), Rat(1));
}

TEST(RoundHalfUp, ExamplesAndTies) {
    EXPECT_EQ(round_half_up(make_rat(2, 5)), Int(0));
    EXPECT_EQ(round_half_up(make_rat(-5, 2)), Int(-2));
    EXPECT_EQ(round_half_up(make_rat(7, 2)), Int(4));
}

TEST(RoundHalfUp, ResidueProperty) {
    // round_half_up(x) - x lies in (-1/2, 1/2] for all rationals
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        Rat x(long(rng.next() % 20001) - 10000, long(rng.next() % 99) + 1);
        x.canonicalize();
        Rat r = Rat(round_half_up(x)) - x;
        EXPECT_GT(r, make_rat(-1, 2));
        EXPECT_LE(r, make_rat(1, 2));
        EXPECT_EQ(round_half_up_scaled(x.get_num(), x.get_den()), round_half_up(x));
    }
}

TEST(Coords, SpanMembership) {
    Basis b = make_basis({{1, 0, 0}, {0, 2, 0}});
    RatVec inside = rvec({{1, 2}, {3, 1}, {0, 1}});
    EXPECT_NO_THROW(coords_in_span(b, inside));
    RatVec outside = rvec({{0, 1}, {0, 1}, {1, 1}});
    EXPECT_THROW(coords_in_span(b, outside), error);
    EXPECT_THROW(lattice_coords(b, IntVec{Int(1), Int(1), Int(0)}), error);
}

}  // namespace
