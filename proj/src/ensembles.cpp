// ensembles.cpp

#include "locc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace locc {

StateEnsemble::StateEnsemble(std::vector<BipartiteState> states)
    : StateEnsemble(std::move(states), {})
{
}

StateEnsemble::StateEnsemble(std::vector<BipartiteState> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors))
{
    if (states_.empty()) {
        throw DomainError("StateEnsemble: at least one state is required");
    }
    for (const auto& s : states_) {
        if (s.dim_a() != states_.front().dim_a() || s.dim_b() != states_.front().dim_b()) {
            throw DomainError("StateEnsemble: all states must share dimensions");
        }
    }
    if (priors_.empty()) {
        priors_.assign(states_.size(), 1.0 / static_cast<double>(states_.size()));
    }
    if (priors_.size() != states_.size()) {
        throw DomainError("StateEnsemble: priors length " + std::to_string(priors_.size()) +
                          " does not match " + std::to_string(states_.size()) + " states");
    }
    double total = 0.0;
    for (double p : priors_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw DomainError("StateEnsemble: priors must be nonnegative and finite");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol::algebraic) {
        throw DomainError("StateEnsemble: priors must sum to 1");
    }
}

bool StateEnsemble::has_uniform_priors(double tol) const
{
    const double uniform = 1.0 / static_cast<double>(priors_.size());
    return std::all_of(priors_.begin(), priors_.end(),
                       [&](double p) { return std::abs(p - uniform) <= tol; });
}

ComplexMatrix StateEnsemble::gram() const
{
    const auto k = static_cast<Eigen::Index>(states_.size());
    ComplexMatrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            g(i, j) = inner_product(states_[i], states_[j]);
        }
    }
    return g;
}

double StateEnsemble::max_overlap() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        for (std::size_t j = i + 1; j < states_.size(); ++j) {
            worst = std::max(worst, std::abs(inner_product(states_[i], states_[j])));
        }
    }
    return worst;
}

bool StateEnsemble::is_orthogonal(double tol) const
{
    return max_overlap() <= tol;
}

bool StateEnsemble::is_maximally_entangled(double tol) const
{
    if (dim_a() != dim_b()) {
        return false;
    }
    return std::all_of(states_.begin(), states_.end(),
                       [&](const BipartiteState& s) { return is_unitary(s.b_matrix(), tol); });
}

StateEnsemble StateEnsemble::subset(const std::vector<std::size_t>& indices) const
{
    std::vector<BipartiteState> picked;
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t i : indices) {
        if (i >= states_.size()) {
            throw DomainError("StateEnsemble::subset: index out of range");
        }
        picked.push_back(states_[i]);
        weights.push_back(priors_[i]);
        total += priors_[i];
    }
    if (!(total > 0.0)) {
        throw DomainError("StateEnsemble::subset: selected states carry no prior weight");
    }
    for (double& w : weights) {
        w /= total;
    }
    return StateEnsemble(std::move(picked), std::move(weights));
}

bool is_prime(std::size_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

StateEnsemble bell_states(std::size_t n, const std::vector<BellLabel>& labels)
{
    if (n < 2) {
        throw DomainError("bell_states: n must be at least 2");
    }
    if (labels.empty()) {
        throw DomainError("bell_states: label list is empty");
    }
    std::vector<BipartiteState> states;
    states.reserve(labels.size());
    for (const auto& label : labels) {
        if (label.shift >= n || label.phase >= n) {
            throw DomainError("bell_states: label out of range");
        }
        states.push_back(state_from_matrix(bell_matrix(n, label.shift, label.phase), n));
    }
    return StateEnsemble(std::move(states));
}

StateEnsemble bell_basis(std::size_t n)
{
    if (n < 2) {
        throw DomainError("bell_basis: n must be at least 2");
    }
    std::vector<BellLabel> labels;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t p = 0; p < n; ++p) {
            labels.push_back({s, p});
        }
    }
    return bell_states(n, labels);
}

BasisFamily mub_prime(std::size_t n)
{
    if (!is_prime(n)) {
        throw DomainError("mub_prime: n = " + std::to_string(n) + " is not prime");
    }
    const PauliPair p = generalized_pauli(n);
    BasisFamily family;
    family.bases.push_back(ComplexMatrix::Identity(n, n));
    ComplexMatrix xz = p.x;
    for (std::size_t b = 0; b < n; ++b) {
        family.bases.push_back(normal_eigensystem(xz, true).eigenvectors);
        xz = xz * p.z;
    }
    return family;
}

double unbiasedness_defect(const ComplexMatrix& candidate, const BasisFamily& family)
{
    const auto n = candidate.rows();
    double worst = 0.0;
    for (const auto& basis : family.bases) {
        if (basis.rows() != n) {
            throw DomainError("common_unbiased_basis_check: dimension mismatch between candidate and family");
        }
        const ComplexMatrix overlaps = candidate.adjoint() * basis;
        const double target = 1.0 / static_cast<double>(n);
        worst = std::max(worst, (overlaps.cwiseAbs2().array() - target).abs().maxCoeff());
    }
    return worst;
}

bool common_unbiased_basis_check(const ComplexMatrix& candidate, const BasisFamily& family, double tol)
{
    if (candidate.rows() != candidate.cols()) {
        throw DomainError("common_unbiased_basis_check: candidate must be square");
    }
    return unbiasedness_defect(candidate, family) <= tol;
}

ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return haar_unitary(n, rng);
}

StateEnsemble random_orthogonal_me_triple(std::size_t n, std::uint64_t seed)
{
    if (n < 2) {
        throw DomainError("random_orthogonal_me_triple: n must be at least 2");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> indices(n * n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    // Partial Fisher-Yates with the engine directly so the draw is libstdc++-independent.
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (indices.size() - i));
        std::swap(indices[i], indices[j]);
    }
    const ComplexMatrix left = haar_unitary(n, rng);
    const ComplexMatrix right = haar_unitary(n, rng);
    std::vector<BipartiteState> states;
    for (std::size_t i = 0; i < 3; ++i) {
        const ComplexMatrix a = bell_matrix(n, indices[i] / n, indices[i] % n);
        states.push_back(state_from_matrix(left * a * right, n));
    }
    return StateEnsemble(std::move(states));
}

StateEnsemble simultaneously_diagonal_ensemble(const ComplexMatrix& u)
{
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw DomainError("simultaneously_diagonal_ensemble: u must be square");
    }
    if (!is_unitary(u, tol::structural)) {
        throw DomainError("simultaneously_diagonal_ensemble: u is not unitary within 1e-10");
    }
    const auto n = static_cast<std::size_t>(u.rows());
    std::vector<BipartiteState> states;
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector psi = ComplexVector::Zero(n * n);
        for (std::size_t j = 0; j < n; ++j) {
            psi(j * n + j) = u(i, j);
        }
        states.emplace_back(n, n, std::move(psi));
    }
    return StateEnsemble(std::move(states));
}

StateEnsemble computational_product_basis(std::size_t m, std::size_t n)
{
    if (m == 0 || n == 0) {
        throw DomainError("computational_product_basis: dimensions must be positive");
    }
    std::vector<BipartiteState> states;
    for (std::size_t i = 0; i < m * n; ++i) {
        ComplexVector psi = ComplexVector::Zero(m * n);
        psi(i) = 1.0;
        states.emplace_back(m, n, std::move(psi));
    }
    return StateEnsemble(std::move(states));
}

StateEnsemble random_orthogonal_pair(std::size_t m, std::size_t n, std::uint64_t seed)
{
    if (m * n < 2) {
        throw DomainError("random_orthogonal_pair: need total dimension at least 2");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&] {
        ComplexVector v(m * n);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v(i) = Complex(re, im);
        }
        return v;
    };
    ComplexVector first = draw().normalized();
    ComplexVector second = draw();
    second -= first.dot(second) * first;
    second.normalize();
    return StateEnsemble({BipartiteState(m, n, first), BipartiteState(m, n, second)});
}

} // namespace locc
