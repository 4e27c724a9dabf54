#include <gtest/gtest.h>

#include "locc/serialize.hpp"
#include "locc/synth.hpp"

using namespace locc;

TEST(Json, MatrixRoundTrip)
{
    const ComplexMatrix m = haar_unitary(3, 4).leftCols(2);
    const Json j = matrix_to_json(m);
    EXPECT_EQ(j.size(), 3u);
    EXPECT_EQ(matrix_from_json(j), m);
    EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]")), DomainError);
}

TEST(Json, EnsembleDescriptors)
{
    EXPECT_EQ(ensemble_from_json(Json::parse(R"({"kind":"bell","n":2})")).size(), 4u);
    EXPECT_EQ(ensemble_from_json(Json::parse(R"({"kind":"bell","n":3,"subset":[[0,1],[2,2]]})")).size(), 2u);
    const StateEnsemble t = ensemble_from_json(Json::parse(R"({"kind":"random_me_triple","n":3,"seed":7})"));
    EXPECT_TRUE(t.is_maximally_entangled());
    EXPECT_THROW(ensemble_from_json(Json::parse(R"({"kind":"bell","n":1})")), DomainError);
    EXPECT_THROW(ensemble_from_json(Json::parse(R"({"kind":"nope"})")), DomainError);
    EXPECT_THROW(ensemble_from_json(Json::parse(R"({"n":3})")), DomainError);
    EXPECT_THROW(ensemble_from_json(Json::parse(R"({"kind":"bell","n":"x"})")), DomainError);
}

TEST(Json, EnsembleRoundTrip)
{
    const StateEnsemble e(random_orthogonal_me_triple(3, 2).states(), {0.5, 0.25, 0.25});
    const StateEnsemble back = ensemble_from_json(ensemble_to_json(e));
    ASSERT_EQ(back.size(), e.size());
    EXPECT_EQ(back.priors(), e.priors());
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_LT((back.state(i).amplitudes() - e.state(i).amplitudes()).norm(), 1e-15);
    }
}

TEST(Json, ProtocolRoundTripPreservesEvaluation)
{
    const StateEnsemble e = random_orthogonal_me_triple(3, 5);
    const OneWayProtocolSpec spec = synthesize_three_qutrit_protocol(e);
    const LoccProtocol p = to_protocol(spec);
    const LoccProtocol tree = protocol_from_json(protocol_to_json(p));
    const LoccProtocol oneway = protocol_from_json(one_way_to_json(spec));
    const LoccProtocol wrapped = protocol_from_json(Json{{"protocol", protocol_to_json(p)}});
    const double ref = evaluate(p, e).success_probability;
    EXPECT_NEAR(evaluate(tree, e).success_probability, ref, 1e-14);
    EXPECT_NEAR(evaluate(oneway, e).success_probability, ref, 1e-14);
    EXPECT_NEAR(evaluate(wrapped, e).success_probability, ref, 1e-14);
}

TEST(Json, ProtocolDescriptors)
{
    const StateEnsemble bb2 = bell_basis(2);
    const LoccProtocol d = protocol_from_json(Json::parse(
        R"({"kind":"discard","inner":{"kind":"two_state","ensemble":{"kind":"bell","n":2},"pair":[0,1]},"kept":[0,1],"k":4})"));
    EXPECT_NEAR(evaluate(d, bb2).success_probability, 0.5, 1e-12);
    const LoccProtocol s = protocol_from_json(Json::parse(R"({"kind":"standard_bell","n":3})"));
    EXPECT_NEAR(evaluate(s, bell_basis(3)).success_probability, 1.0 / 3.0, 1e-12);
    const LoccProtocol bare = protocol_from_json(Json::parse(R"({"guess":1})"), std::pair<std::size_t, std::size_t>{2, 2});
    EXPECT_NEAR(evaluate(bare, bb2).success_probability, 0.25, 1e-15);
    EXPECT_THROW(protocol_from_json(Json::parse(R"({"guess":1})")), DomainError);
    EXPECT_THROW(protocol_from_json(Json::parse(R"({"kind":"mystery"})")), DomainError);
}

TEST(Json, ReportsHaveRequiredFields)
{
    const Json b = bounds_to_json(verdict(bell_basis(2)));
    for (const char* key : {"k", "m", "n", "lambda_max", "f_lower", "f_upper", "fme_lower", "fme_upper", "schmidt_upper",
                            "entropy_upper_bits", "g_lower_bits", "g_upper_bits", "verdict", "witnesses"}) {
        EXPECT_TRUE(b.contains(key)) << key;
    }
    EXPECT_EQ(b["verdict"], "PerfectImpossible");
    const Json ev = evaluation_to_json(evaluate(blind_guess_protocol(2, 2, 0), bell_basis(2)));
    EXPECT_EQ(ev["joint_table"].size(), 4u);
}
