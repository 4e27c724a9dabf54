// ensembles.hpp
// Named state families and seeded random test families.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "locc/qstate.hpp"

namespace locc {

class StateEnsemble {
public:
    // Uniform priors.
    explicit StateEnsemble(std::vector<BipartiteState> states);
    StateEnsemble(std::vector<BipartiteState> states, std::vector<double> priors);

    std::size_t size() const { return states_.size(); }
    std::size_t dim_a() const { return states_.front().dim_a(); }
    std::size_t dim_b() const { return states_.front().dim_b(); }
    const std::vector<BipartiteState>& states() const { return states_; }
    const BipartiteState& state(std::size_t i) const { return states_.at(i); }
    const std::vector<double>& priors() const { return priors_; }

    bool has_uniform_priors(double tol = tol::algebraic) const;
    bool is_orthogonal(double tol = tol::structural) const;
    bool is_maximally_entangled(double tol = tol::structural) const;
    // Largest |<psi_i|psi_j>| over i != j.
    double max_overlap() const;
    ComplexMatrix gram() const;

    StateEnsemble with_uniform_priors() const { return StateEnsemble(states_); }
    StateEnsemble subset(const std::vector<std::size_t>& indices) const;

private:
    std::vector<BipartiteState> states_;
    std::vector<double> priors_;
};

// A family of orthonormal bases of C^n, each stored as a unitary whose columns are
// the basis vectors.
struct BasisFamily {
    std::vector<ComplexMatrix> bases;

    std::size_t size() const { return bases.size(); }
    bool empty() const { return bases.empty(); }
};

bool is_prime(std::size_t n);

// Labels of BB_n are (shift, phase); index in the full basis is shift * n + phase.
struct BellLabel {
    std::size_t shift;
    std::size_t phase;
    friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

StateEnsemble bell_basis(std::size_t n);
StateEnsemble bell_states(std::size_t n, const std::vector<BellLabel>& labels);

// Eigenbases of Z, X, XZ, ..., XZ^(n-1): a complete set of n + 1 MUBs for prime n.
BasisFamily mub_prime(std::size_t n);

// Every column of `candidate` has squared overlap 1/n with every vector of every
// family member, within tol.
bool common_unbiased_basis_check(const ComplexMatrix& candidate, const BasisFamily& family,
                                 double tol = tol::structural);

// Largest | |<b|a>|^2 - 1/n | over all cross pairs; 0 for an empty family.
double unbiasedness_defect(const ComplexMatrix& candidate, const BasisFamily& family);

// Haar-distributed unitary from QR of a complex Gaussian matrix.
template <typename Rng>
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed);

// Three pairwise orthogonal maximally entangled states B_i = U A_i W with A_i three
// distinct X^a Z^b, U and W Haar random. Deterministic in `seed`.
StateEnsemble random_orthogonal_me_triple(std::size_t n, std::uint64_t seed);

// States sum_j u(i, j)|jj>, one per row of the unitary u.
StateEnsemble simultaneously_diagonal_ensemble(const ComplexMatrix& u);

// The m*n computational product basis |a>|b>.
StateEnsemble computational_product_basis(std::size_t m, std::size_t n);

// Two random orthogonal (generally entangled) states of C^m (x) C^n.
StateEnsemble random_orthogonal_pair(std::size_t m, std::size_t n, std::uint64_t seed);

} // namespace locc

#include "locc/detail/haar.ipp"
