// protocol.hpp
// Finite-round LOCC protocols as trees of alternating local POVMs, with exact
// branch-sum evaluation and Monte-Carlo sampling.
//
// A POVM element K acting on Alice maps the current B-matrix to B K^T; acting on Bob
// it maps B to K B. Elements may be rectangular, which models a party moving into an
// enlarged (or reduced) local space between rounds. The weight of a leaf for input
// state i is ||B_leaf||_F^2 / m, with m Alice's initial dimension.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/qstate.hpp"

namespace locc {

enum class Party { Alice, Bob };

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }
std::string to_string(Party p);

class Povm {
public:
    // Throws PreconditionError unless sum_i K_i^dagger K_i = I within tol.
    explicit Povm(std::vector<ComplexMatrix> elements, double tol = tol::structural);

    static Povm identity(std::size_t dim);
    // Rank-one projectors onto the columns of an orthonormal basis.
    static Povm projective(const ComplexMatrix& basis);

    const std::vector<ComplexMatrix>& elements() const { return elements_; }
    const ComplexMatrix& element(std::size_t i) const { return elements_.at(i); }
    std::size_t size() const { return elements_.size(); }
    std::size_t input_dim() const { return static_cast<std::size_t>(elements_.front().cols()); }

    double completeness_defect() const;

private:
    std::vector<ComplexMatrix> elements_;
};

struct Guess {
    std::size_t label;
};

struct ProtocolNode;
using ProtocolChild = std::variant<Guess, std::shared_ptr<const ProtocolNode>>;

struct ProtocolNode {
    Party actor;
    Povm povm;
    std::vector<ProtocolChild> children;  // one per POVM outcome
};

ProtocolChild make_node(Party actor, Povm povm, std::vector<ProtocolChild> children);

class LoccProtocol {
public:
    // Validates alternation of actors along every path, operator shapes against the
    // running local dimensions, and one child per outcome.
    LoccProtocol(std::size_t dim_a, std::size_t dim_b, ProtocolChild root);

    std::size_t dim_a() const { return dim_a_; }
    std::size_t dim_b() const { return dim_b_; }
    const ProtocolChild& root() const { return root_; }

    std::size_t depth() const;
    std::size_t leaf_count() const;
    std::size_t max_label() const;

private:
    std::size_t dim_a_;
    std::size_t dim_b_;
    ProtocolChild root_;
};

struct JointEntry {
    std::size_t state;
    std::size_t leaf;
    std::vector<std::size_t> path;
    std::size_t guess;
    double probability;
};

struct ProtocolEvaluation {
    double success_probability = 0.0;
    // (V, Y, Z) with Y the outcome path and Z the leaf guess; entries below
    // `prune_threshold` are dropped.
    std::vector<JointEntry> joint_table;
    double mutual_information_bits = 0.0;
    // Total leaf mass for each input state; one up to POVM completeness.
    std::vector<double> state_mass;
    std::size_t leaf_count = 0;

    static constexpr double prune_threshold = 1e-14;

    double mutual_information_nats() const;
    double table_mass() const;
};

ProtocolEvaluation evaluate(const LoccProtocol& protocol, const StateEnsemble& ensemble);

struct SimulationResult {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double rate = 0.0;
    // sqrt(p (1 - p) / trials) at the supplied reference probability.
    double standard_error(double p) const;
};

SimulationResult simulate(const LoccProtocol& protocol, const StateEnsemble& ensemble,
                          std::size_t trials, std::uint64_t seed);

// Alice measures first in the columns of `alice_basis`; for outcome x Bob holds
// (up to normalization) B_i u_x with u_x the conjugate of column x. Bob vectors are
// stored normalized with the label of the state they came from.
struct LabeledVector {
    std::size_t label;
    ComplexVector vector;
};

struct OneWayProtocolSpec {
    ComplexMatrix alice_basis;
    std::vector<std::vector<LabeledVector>> bob_discriminators;
    std::size_t dim_b = 0;
};

double max_bob_overlap(const OneWayProtocolSpec& spec);
LoccProtocol to_protocol(const OneWayProtocolSpec& spec);

// Builds the one-way spec for Alice basis columns `u` (Bob sees B_i u_x) from the
// ensemble's B-matrices. Vectors with norm below 1e-12 are omitted.
OneWayProtocolSpec one_way_spec(const ComplexMatrix& u, const StateEnsemble& ensemble);

// Projective measurement that resolves the labeled vectors: Gram-Schmidt in order,
// one rank-one element per vector, plus the projector onto the remaining space
// assigned to the lowest label present (or `fallback_label`).
struct LabeledPovm {
    Povm povm;
    std::vector<std::size_t> labels;
};
LabeledPovm discriminating_povm(const std::vector<LabeledVector>& vectors, std::size_t dim,
                                std::size_t fallback_label = 0);

LoccProtocol blind_guess_protocol(std::size_t dim_a, std::size_t dim_b, std::size_t label);

// Alice then Bob measure in the computational basis; the guess is the subset member
// whose shift equals (a - b) mod n, lowest phase first.
LoccProtocol standard_bell_protocol(std::size_t n, const std::vector<BellLabel>& subset);

// Runs `inner` (which guesses labels 0..j-1) and relabels its guess j as kept[j].
LoccProtocol discard_protocol(const LoccProtocol& inner, const std::vector<std::size_t>& kept,
                              std::size_t k);

// One-way protocol that perfectly distinguishes two orthogonal states.
LoccProtocol two_state_protocol(const BipartiteState& first, const BipartiteState& second);

// Orthonormal basis {w_x} with w_x^dagger M w_x = 0 for all x. M must be traceless.
ComplexMatrix zero_diagonal_basis(const ComplexMatrix& m);

// Replaces every leaf by an identity round of the party that would act next.
LoccProtocol pad_with_identity_rounds(const LoccProtocol& protocol);

// Local protocol for orthogonal product states when one party's measurement can
// sort the states into groups that the other party then resolves. Empty if the
// states are not all product or no such one-way split exists.
std::optional<LoccProtocol> product_state_protocol(const StateEnsemble& ensemble);

} // namespace locc
