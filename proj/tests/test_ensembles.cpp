#include <gtest/gtest.h>

#include <cmath>

#include "locc/ensembles.hpp"

using namespace locc;

TEST(Primes, SmallValues)
{
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(7));
    EXPECT_FALSE(is_prime(9));
    EXPECT_TRUE(is_prime(97));
}

TEST(BellBasis, OrthogonalAndMaximallyEntangled)
{
    for (std::size_t n = 2; n <= 5; ++n) {
        const StateEnsemble e = bell_basis(n);
        EXPECT_EQ(e.size(), n * n);
        EXPECT_TRUE(e.is_orthogonal());
        EXPECT_TRUE(e.is_maximally_entangled());
        EXPECT_TRUE(e.has_uniform_priors());
        EXPECT_LT(e.max_overlap(), 1e-12);
    }
    EXPECT_THROW(bell_basis(1), DomainError);
}

TEST(BellBasis, IndexOrder)
{
    const StateEnsemble full = bell_basis(3);
    const StateEnsemble one = bell_states(3, {{2, 1}});
    EXPECT_LT((full.state(2 * 3 + 1).amplitudes() - one.state(0).amplitudes()).norm(), 1e-14);
    EXPECT_THROW(bell_states(3, {{0, 3}}), DomainError);
}

TEST(Ensemble, PriorValidation)
{
    const StateEnsemble bb = bell_basis(2);
    EXPECT_THROW(StateEnsemble(bb.states(), {0.5, 0.5}), DomainError);
    EXPECT_THROW(StateEnsemble(bb.states(), {0.5, 0.5, 0.5, -0.5}), DomainError);
    EXPECT_THROW(StateEnsemble(bb.states(), {0.1, 0.1, 0.1, 0.1}), DomainError);
    EXPECT_THROW(StateEnsemble(std::vector<BipartiteState>{}), DomainError);
    const StateEnsemble skewed(bb.states(), {0.4, 0.3, 0.2, 0.1});
    EXPECT_FALSE(skewed.has_uniform_priors());
    const StateEnsemble sub = skewed.subset({0, 3});
    EXPECT_NEAR(sub.priors()[0], 0.8, 1e-15);
    EXPECT_NEAR(sub.priors()[1], 0.2, 1e-15);
}

TEST(Ensemble, GramOfBellBasisIsIdentity)
{
    EXPECT_TRUE(bell_basis(3).gram().isIdentity(1e-12));
}

TEST(Mub, PrimeDimensions)
{
    for (std::size_t n : {2u, 3u, 5u, 7u, 11u}) {
        const BasisFamily f = mub_prime(n);
        ASSERT_EQ(f.size(), n + 1);
        for (std::size_t a = 0; a < f.size(); ++a) {
            EXPECT_TRUE(is_unitary(f.bases[a], 1e-10));
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                const Eigen::MatrixXd sq = (f.bases[a].adjoint() * f.bases[b]).cwiseAbs2();
                EXPECT_LT((sq.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff(), 1e-10);
            }
        }
    }
    EXPECT_THROW(mub_prime(4), DomainError);
}

TEST(Mub, CommonUnbiasedCheck)
{
    const BasisFamily f = mub_prime(3);
    const BasisFamily rest{{f.bases.begin() + 1, f.bases.end()}};
    EXPECT_TRUE(common_unbiased_basis_check(f.bases[0], rest, 1e-10));
    EXPECT_LT(unbiasedness_defect(f.bases[0], rest), 1e-10);
    EXPECT_FALSE(common_unbiased_basis_check(f.bases[1], rest, 1e-10));
}

TEST(Haar, SeededAndUnitary)
{
    const ComplexMatrix a = haar_unitary(4, 123);
    const ComplexMatrix b = haar_unitary(4, 123);
    const ComplexMatrix c = haar_unitary(4, 124);
    EXPECT_TRUE(is_unitary(a, 1e-12));
    EXPECT_EQ(a, b);
    EXPECT_GT((a - c).norm(), 1e-3);
}

TEST(Haar, FirstColumnPhaseStatistics)
{
    // E|U_00|^2 = 1/n for Haar measure.
    double acc = 0.0;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) {
        acc += std::norm(haar_unitary(3, static_cast<std::uint64_t>(s))(0, 0));
    }
    EXPECT_NEAR(acc / samples, 1.0 / 3.0, 0.02);
}

TEST(RandomTriple, OrthogonalMaximallyEntangled)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const StateEnsemble e = random_orthogonal_me_triple(3, seed);
        EXPECT_EQ(e.size(), 3u);
        EXPECT_TRUE(e.is_orthogonal());
        EXPECT_TRUE(e.is_maximally_entangled());
    }
    const StateEnsemble x = random_orthogonal_me_triple(3, 7);
    const StateEnsemble y = random_orthogonal_me_triple(3, 7);
    EXPECT_EQ(x.state(2).amplitudes(), y.state(2).amplitudes());
}

TEST(OtherConstructors, Shapes)
{
    const StateEnsemble p = computational_product_basis(2, 3);
    EXPECT_EQ(p.size(), 6u);
    EXPECT_TRUE(p.is_orthogonal());
    EXPECT_FALSE(p.is_maximally_entangled());
    const StateEnsemble d = simultaneously_diagonal_ensemble(fourier_matrix(3));
    EXPECT_EQ(d.size(), 3u);
    EXPECT_TRUE(d.is_orthogonal());
    const StateEnsemble r = random_orthogonal_pair(3, 2, 4);
    EXPECT_EQ(r.dim_a(), 3u);
    EXPECT_EQ(r.dim_b(), 2u);
    EXPECT_TRUE(r.is_orthogonal());
}
