#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "locc/bounds.hpp"
#include "locc/protocol.hpp"
#include "locc/synth.hpp"
#include "test_util.hpp"

using namespace locc;
using locc::testing::cvec;

namespace {

ComplexMatrix projector(const ComplexVector& v)
{
    return v * v.adjoint();
}

std::vector<BellLabel> all_labels(std::size_t n)
{
    std::vector<BellLabel> out;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t p = 0; p < n; ++p) {
            out.push_back({s, p});
        }
    }
    return out;
}

} // namespace

TEST(Povm, CompletenessEnforced)
{
    const ComplexMatrix p0 = projector(cvec({1.0, 0.0}));
    EXPECT_THROW(Povm({p0}), PreconditionError);
    const Povm ok({p0, projector(cvec({0.0, 1.0}))});
    EXPECT_LT(ok.completeness_defect(), 1e-15);
    EXPECT_THROW(Povm({p0, 2.0 * p0}), PreconditionError);
}

TEST(LoccProtocolTree, Validation)
{
    const Povm a = Povm::projective(ComplexMatrix::Identity(2, 2));
    // Wrong child count.
    EXPECT_THROW(LoccProtocol(2, 2, make_node(Party::Alice, a, {Guess{0}})), DomainError);
    // Consecutive rounds by the same party.
    const ProtocolChild inner = make_node(Party::Alice, a, {Guess{0}, Guess{1}});
    EXPECT_THROW(LoccProtocol(2, 2, make_node(Party::Alice, a, {inner, Guess{1}})), DomainError);
    // Dimension mismatch.
    EXPECT_THROW(LoccProtocol(3, 2, make_node(Party::Alice, a, {Guess{0}, Guess{1}})), DomainError);
    const LoccProtocol p(2, 2, make_node(Party::Bob, a, {make_node(Party::Alice, a, {Guess{0}, Guess{1}}), Guess{2}}));
    EXPECT_EQ(p.depth(), 2u);
    EXPECT_EQ(p.leaf_count(), 3u);
    EXPECT_EQ(p.max_label(), 2u);
}

TEST(Evaluate, HandBuiltProtocolMatchesOracle)
{
    // Three (not all orthogonal) states with priors 0.5/0.3/0.2. Alice measures in the
    // Hadamard basis; Bob then measures a rotated basis or the computational one.
    // Reference values were computed independently with explicit Kronecker products.
    const double s = 1.0 / std::sqrt(2.0);
    const StateEnsemble e({BipartiteState(2, 2, cvec({s, 0.0, 0.0, s})),
                           BipartiteState(2, 2, cvec({0.0, s, Complex(0.0, s), 0.0})),
                           BipartiteState(2, 2, cvec({std::cos(0.4), 0.0, 0.0, -std::sin(0.4)}))},
                          {0.5, 0.3, 0.2});
    const double t = 0.3;
    const Povm alice({projector(cvec({s, s})), projector(cvec({s, -s}))});
    const Povm bob_rot({projector(cvec({std::cos(t), std::sin(t)})), projector(cvec({-std::sin(t), std::cos(t)}))});
    const Povm bob_std = Povm::projective(ComplexMatrix::Identity(2, 2));
    const LoccProtocol p(2, 2,
                         make_node(Party::Alice, alice,
                                   {make_node(Party::Bob, bob_rot, {Guess{0}, Guess{1}}),
                                    make_node(Party::Bob, bob_std, {Guess{2}, Guess{0}})}));
    const ProtocolEvaluation ev = evaluate(p, e);
    EXPECT_NEAR(ev.success_probability, 0.4804156446417376, 1e-12);
    EXPECT_NEAR(ev.mutual_information_bits, 0.05798276299672714, 1e-12);
    EXPECT_NEAR(ev.table_mass(), 1.0, 1e-12);
    EXPECT_NEAR(ev.mutual_information_nats(), 0.05798276299672714 * std::log(2.0), 1e-12);
}

TEST(Evaluate, DimensionMismatch)
{
    EXPECT_THROW(evaluate(blind_guess_protocol(2, 2, 0), bell_basis(3)), DomainError);
}

TEST(Evaluate, BlindGuess)
{
    const ProtocolEvaluation ev = evaluate(blind_guess_protocol(3, 3, 1), bell_basis(3));
    EXPECT_NEAR(ev.success_probability, 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(ev.mutual_information_bits, 0.0, 1e-15);
}

TEST(Evaluate, StandardBellProtocol)
{
    for (std::size_t n = 2; n <= 5; ++n) {
        const ProtocolEvaluation ev = evaluate(standard_bell_protocol(n, all_labels(n)), bell_basis(n));
        EXPECT_NEAR(ev.success_probability, 1.0 / static_cast<double>(n), 1e-12);
        EXPECT_NEAR(ev.mutual_information_bits, std::log2(static_cast<double>(n)), 1e-10);
    }
}

TEST(Evaluate, StandardProtocolOnShiftDistinctSubsetIsPerfect)
{
    const std::vector<BellLabel> subset{{0, 2}, {1, 0}, {2, 1}};
    EXPECT_NEAR(evaluate(standard_bell_protocol(3, subset), bell_states(3, subset)).success_probability, 1.0, 1e-12);
}

TEST(Discard, ScalesInnerSuccess)
{
    // Keeping j of k equally likely states scales the inner success by j/k.
    const StateEnsemble bb3 = bell_basis(3);
    const std::vector<std::size_t> kept{0, 4, 8};
    const LoccProtocol inner = standard_bell_protocol(3, {{0, 0}, {1, 1}, {2, 2}});
    const double q = evaluate(inner, bb3.subset(kept)).success_probability;
    EXPECT_NEAR(q, 1.0, 1e-12);
    for (std::size_t k : {5u, 9u}) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        if (k == 5) {
            idx = {0, 1, 4, 5, 8};
        }
        const StateEnsemble e = bb3.subset(idx);
        std::vector<std::size_t> local;
        for (std::size_t want : kept) {
            local.push_back(static_cast<std::size_t>(std::find(idx.begin(), idx.end(), want) - idx.begin()));
        }
        const double got = evaluate(discard_protocol(inner, local, k), e).success_probability;
        EXPECT_NEAR(got, 3.0 / static_cast<double>(k) * q, 1e-12);
    }
}

TEST(TwoState, RandomOrthogonalPairsArePerfect)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::size_t m = 2 + seed % 3;
        const std::size_t n = 2 + (seed / 3) % 3;
        const StateEnsemble e = random_orthogonal_pair(m, n, seed);
        EXPECT_NEAR(evaluate(two_state_protocol(e.state(0), e.state(1)), e).success_probability, 1.0, 1e-9)
            << "m=" << m << " n=" << n << " seed=" << seed;
    }
    const StateEnsemble bb = bell_basis(2);
    EXPECT_THROW(two_state_protocol(bb.state(0), bb.state(0)), PreconditionError);
}

TEST(TwoState, ZeroDiagonalBasis)
{
    const ComplexMatrix a = locc::testing::random_matrix(4, 4, 3);
    const ComplexMatrix m = a - a.trace() / 4.0 * ComplexMatrix::Identity(4, 4);
    const ComplexMatrix w = zero_diagonal_basis(m);
    EXPECT_TRUE(is_unitary(w, 1e-10));
    EXPECT_LT((w.adjoint() * m * w).diagonal().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Padding, PreservesStatistics)
{
    const StateEnsemble e = random_orthogonal_me_triple(3, 2);
    const LoccProtocol p = to_protocol(synthesize_three_qutrit_protocol(e));
    const LoccProtocol padded = pad_with_identity_rounds(p);
    EXPECT_EQ(padded.depth(), p.depth() + 1);
    const ProtocolEvaluation a = evaluate(p, e);
    const ProtocolEvaluation b = evaluate(padded, e);
    EXPECT_NEAR(a.success_probability, b.success_probability, 1e-12);
    EXPECT_NEAR(a.mutual_information_bits, b.mutual_information_bits, 1e-12);
}

TEST(ProductStates, ComputationalBasisAndRejection)
{
    const StateEnsemble e = computational_product_basis(3, 2);
    const auto p = product_state_protocol(e);
    ASSERT_TRUE(p.has_value());
    EXPECT_NEAR(evaluate(*p, e).success_probability, 1.0, 1e-12);
    EXPECT_FALSE(product_state_protocol(bell_basis(2)).has_value());
}

TEST(Simulate, AgreesAndIsDeterministic)
{
    const StateEnsemble e = bell_basis(3);
    const LoccProtocol p = standard_bell_protocol(3, all_labels(3));
    const SimulationResult a = simulate(p, e, 50000, 17);
    const SimulationResult b = simulate(p, e, 50000, 17);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_LE(std::abs(a.rate - 1.0 / 3.0), 5.0 * a.standard_error(1.0 / 3.0));
    EXPECT_THROW(simulate(p, e, 0, 1), DomainError);
}

TEST(Simulate, NonUniformPriors)
{
    const StateEnsemble e(bell_basis(2).states(), {0.7, 0.1, 0.1, 0.1});
    const LoccProtocol p = blind_guess_protocol(2, 2, 0);
    const SimulationResult r = simulate(p, e, 100000, 3);
    EXPECT_NEAR(evaluate(p, e).success_probability, 0.7, 1e-15);
    EXPECT_LE(std::abs(r.rate - 0.7), 5.0 * r.standard_error(0.7));
}
