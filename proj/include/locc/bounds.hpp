// bounds.hpp
// Closed-form bounds on worst-case LOCC discrimination and a three-valued verdict on
// whether a concrete ensemble can be distinguished perfectly.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

struct BoundPair {
    double lower;
    double upper;
};

// f_me(k, n): maximally entangled k-state ensembles in C^n (x) C^n.
// Valid for 2 <= n <= k <= n^2, and for k = 2 with any n >= 2.
BoundPair fme_bounds(std::size_t k, std::size_t n);

// f(k, n): arbitrary orthogonal ensembles, 2 <= k <= n^2.
BoundPair f_bounds(std::size_t k, std::size_t n);

// f(k, m, n) for m <= n, k <= m n; inclusion bounds only.
BoundPair f_mixed_dims_bounds(std::size_t k, std::size_t m, std::size_t n);

// g(k, n) in bits, 1 < k <= n^2.
BoundPair g_bounds_bits(std::size_t k, std::size_t n);

// min(1, lambda_M m n / k) for equally likely states.
double schmidt_bound(const StateEnsemble& ensemble);

// True when every state equals (I (x) U_i)|psi_1> for some unitary U_i on Bob,
// i.e. all states share Alice's reduced density matrix.
bool bob_unitarily_related(const StateEnsemble& ensemble, double tol = 1e-9);

// n / k when the ensemble is uniform, Bob-unitarily related and n <= k <= m n.
std::optional<double> bob_unitary_bound(const StateEnsemble& ensemble);

// S(rho_A) + S(rho_B) - sum_i p_i S(rho_A^i), in bits.
double entropy_bound_bits(const StateEnsemble& ensemble);

// Von Neumann entropy (bits) of a density matrix; eigenvalues below 1e-15 are dropped.
double von_neumann_entropy_bits(const ComplexMatrix& rho);

// Reduced density matrices of a pure state.
ComplexMatrix reduced_alice(const BipartiteState& state);
ComplexMatrix reduced_bob(const BipartiteState& state);

enum class Verdict { PerfectPossible, PerfectImpossible, Unknown };
std::string to_string(Verdict v);

struct Witness {
    std::string name;  // stable identifier used in reports
    double value;
    std::string description;
};

struct BoundsReport {
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    double lambda_max = 0.0;
    double f_lower = 0.0;
    double f_upper = 1.0;
    std::optional<double> fme_lower;
    std::optional<double> fme_upper;
    double schmidt_upper = 1.0;
    std::optional<double> bob_unitary_upper;
    double entropy_upper_bits = 0.0;
    std::optional<double> g_lower_bits;
    std::optional<double> g_upper_bits;
    Verdict verdict = Verdict::Unknown;
    std::vector<Witness> witnesses;
    // Name of the synthesizer whose protocol was verified perfect, if any.
    std::optional<std::string> perfect_protocol_source;
};

// Tries the shipped synthesizers (two-state, three qutrit, common unbiased basis,
// product states) and returns the first protocol whose evaluated success is 1.
struct PerfectProtocol {
    std::string source;
    LoccProtocol protocol;
};
std::optional<PerfectProtocol> find_perfect_protocol(const StateEnsemble& ensemble);

BoundsReport verdict(const StateEnsemble& ensemble);

} // namespace locc
