#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "locc/synth.hpp"
#include "test_util.hpp"

using namespace locc;

namespace {

ComplexMatrix phases(double a, double b, double c)
{
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = std::polar(1.0, a);
    d(1, 1) = std::polar(1.0, b);
    d(2, 2) = std::polar(1.0, c);
    return d;
}

// Unitary circulant matrix F diag(...) F^dagger, scrambled by diagonal phases.
ComplexMatrix scrambled_circulant(double a, double b, double c, const ComplexMatrix& left, const ComplexMatrix& right)
{
    const ComplexMatrix f = fourier_matrix(3);
    return left * (f * phases(a, b, c) * f.adjoint()) * right;
}

} // namespace

TEST(TracelessEigensystem, ClockMatrix)
{
    const TracelessEigensystem es = traceless_unitary_eigensystem(generalized_pauli(3).z);
    EXPECT_NEAR(std::abs(es.phase), 1.0, 1e-12);
    const ComplexMatrix z = generalized_pauli(3).z;
    for (int i = 0; i < 3; ++i) {
        const ComplexVector v = es.eigenvectors.col(i);
        const Complex lambda = es.phase * root_of_unity(3, i);
        EXPECT_LT((z * v - lambda * v).norm(), 1e-10);
    }
    EXPECT_THROW(traceless_unitary_eigensystem(ComplexMatrix::Identity(3, 3)), PreconditionError);
}

TEST(PhaseNormalize, RestoresCirculantForm)
{
    for (int t = 0; t < 20; ++t) {
        const double s = 0.37 * t;
        const ComplexMatrix v =
            scrambled_circulant(0.3 + s, 1.9 - s, -2.2 + 0.5 * s, phases(0.0, 1.1 + s, -0.4 * s), phases(0.7, -2.5 + s, 0.2 * s));
        ASSERT_TRUE(is_unitary(v, 1e-12));
        EXPECT_GT(circulant_defect(v), 1e-3);
        const PhaseSolution sol = overlap_phase_normalize(ComplexMatrix::Identity(3, 3), v);
        EXPECT_LT(circulant_defect(sol.adjusted_overlap_matrix), 1e-10) << "t=" << t;
        const ComplexMatrix rebuilt = sol.row_phases() * v * sol.column_phases().adjoint();
        EXPECT_LT((rebuilt - sol.adjusted_overlap_matrix).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PhaseNormalize, IdempotentOnCirculantInput)
{
    const ComplexMatrix c = scrambled_circulant(0.2, 1.0, -1.3, ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3));
    const PhaseSolution sol = overlap_phase_normalize(ComplexMatrix::Identity(3, 3), c);
    EXPECT_LT((sol.adjusted_overlap_matrix - c).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PhaseNormalize, SingleDiagonalSupport)
{
    // |V| is a shifted permutation: only one generalized diagonal is nonzero.
    ComplexMatrix shift = generalized_pauli(3).x;
    const ComplexMatrix v = phases(0.4, -1.2, 2.9) * shift * phases(0.0, 0.8, -0.3);
    const PhaseSolution sol = overlap_phase_normalize(ComplexMatrix::Identity(3, 3), v);
    EXPECT_LT(circulant_defect(sol.adjusted_overlap_matrix), 1e-10);
}

TEST(PhaseNormalize, RejectsNonCirculantMagnitudes)
{
    const ComplexMatrix u = haar_unitary(3, 5);
    EXPECT_THROW(overlap_phase_normalize(ComplexMatrix::Identity(3, 3), u), PreconditionError);
}

TEST(ThreeQutrit, RandomTriplesArePerfect)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const StateEnsemble e = random_orthogonal_me_triple(3, seed);
        const OneWayProtocolSpec spec = synthesize_three_qutrit_protocol(e);
        EXPECT_TRUE(is_unitary(spec.alice_basis, 1e-10));
        EXPECT_LE(max_bob_overlap(spec), 1e-8);
        EXPECT_NEAR(evaluate(to_protocol(spec), e).success_probability, 1.0, 1e-9) << "seed " << seed;
    }
}

TEST(ThreeQutrit, BellTriples)
{
    // Commuting (all clock powers) and non-commuting (mixed shifts) cases.
    for (const auto& labels : {std::vector<BellLabel>{{0, 0}, {0, 1}, {0, 2}},
                               std::vector<BellLabel>{{0, 0}, {1, 0}, {2, 0}},
                               std::vector<BellLabel>{{0, 0}, {1, 1}, {2, 0}},
                               std::vector<BellLabel>{{1, 2}, {2, 2}, {0, 1}}}) {
        const StateEnsemble e = bell_states(3, labels);
        EXPECT_NEAR(evaluate(to_protocol(synthesize_three_qutrit_protocol(e)), e).success_probability, 1.0, 1e-9);
    }
}

TEST(ThreeQutrit, Preconditions)
{
    EXPECT_THROW(synthesize_three_qutrit_protocol(bell_states(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}})), PreconditionError);
    EXPECT_THROW(synthesize_three_qutrit_protocol(computational_product_basis(3, 3).subset({0, 1, 2})),
                 PreconditionError);
    EXPECT_THROW(synthesize_three_qutrit_protocol(bell_states(2, {{0, 0}, {1, 0}, {1, 1}})), PreconditionError);
}

TEST(Cub, FindsMubForBellSubsets)
{
    const StateEnsemble e = bell_states(5, {{0, 0}, {1, 2}, {3, 4}});
    const auto cub = find_cub(pairwise_family(e), default_cub_candidates(5));
    ASSERT_TRUE(cub.has_value());
    EXPECT_NEAR(evaluate(to_protocol(synthesize_cub_protocol(e, *cub)), e).success_probability, 1.0, 1e-9);
}

TEST(Cub, ViolationNamesPair)
{
    const StateEnsemble e = bell_states(3, {{0, 0}, {0, 1}, {1, 0}});
    try {
        synthesize_cub_protocol(e, ComplexMatrix::Identity(3, 3));
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& ex) {
        EXPECT_NE(std::string(ex.what()).find("B_"), std::string::npos);
    }
}

TEST(Cub, NoCandidateWhenAllDirectionsUsed)
{
    // {I, X, Z, XZ} in dimension 2 uses every MUB direction.
    const StateEnsemble e = bell_basis(2);
    EXPECT_FALSE(find_cub(pairwise_family(e), default_cub_candidates(2)).has_value());
}

TEST(Cub, SimultaneouslyDiagonalEnsemble)
{
    const StateEnsemble e = simultaneously_diagonal_ensemble(haar_unitary(4, 21));
    const auto fam = pairwise_family(e);
    EXPECT_TRUE(common_unbiased_basis_check(fourier_matrix(4), fam, 1e-8));
    EXPECT_NEAR(evaluate(to_protocol(synthesize_cub_protocol(e, fourier_matrix(4))), e).success_probability, 1.0, 1e-9);
}
