// synth.hpp
// Explicit one-way LOCC protocol synthesis:
//   * any three orthogonal maximally entangled states of C^3 (x) C^3, via a Fourier
//     measurement in the eigenbasis of B_2^dagger B_1 after phase alignment;
//   * any ensemble whose pairwise products B_i^dagger B_j admit a common unbiased
//     basis.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

// Eigen-decomposition of a traceless 3x3 unitary. Eigenvalues are exactly
// phase * {1, w, w^2} (w = e^{2 pi i/3}); column i of `eigenvectors` belongs to
// phase * w^i. The labeling is anchored at the first Schur eigenvalue.
struct TracelessEigensystem {
    Complex phase;
    ComplexMatrix eigenvectors;
};

TracelessEigensystem traceless_unitary_eigensystem(const ComplexMatrix& m);

// Diagonal phase adjustment V' = U1 V U2^dagger with U1 = diag(1, e^{i alpha}, e^{i beta}),
// U2 = diag(1, e^{i gamma}, e^{i delta}) that makes V' circulant.
struct PhaseSolution {
    double gamma = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    ComplexMatrix adjusted_overlap_matrix;

    ComplexMatrix row_phases() const;     // U1
    ComplexMatrix column_phases() const;  // U2
    // A_k = <e_i|f_{k+i}> read off row 0 of V'.
    ComplexVector circulant_constants() const;
};

// Largest deviation of V(i, j) from V(0, (j - i) mod 3), for any 3x3 matrix.
double circulant_defect(const ComplexMatrix& v);

// e_basis and f_basis are orthonormal 3x3 bases with |<e_i|f_j>| depending only on
// (j - i) mod 3 (within 1e-8).
PhaseSolution overlap_phase_normalize(const ComplexMatrix& e_basis, const ComplexMatrix& f_basis);

OneWayProtocolSpec synthesize_three_qutrit_protocol(const StateEnsemble& ensemble);

// Eigenbasis of B_i^dagger B_j for every pair i < j; identity when the product is
// diagonal. Throws PreconditionError if some product is not normal.
struct PairEigenbasis {
    std::size_t first;
    std::size_t second;
    ComplexMatrix basis;
};
std::vector<PairEigenbasis> pairwise_eigenbases(const StateEnsemble& ensemble);
BasisFamily pairwise_family(const StateEnsemble& ensemble);

OneWayProtocolSpec synthesize_cub_protocol(const StateEnsemble& ensemble, const ComplexMatrix& cub);

std::optional<ComplexMatrix> find_cub(const BasisFamily& family, const std::vector<ComplexMatrix>& candidates,
                                      double tol = tol::synthesis);

// mub_prime(n) when n is prime, followed by the Fourier and computational bases.
std::vector<ComplexMatrix> default_cub_candidates(std::size_t n);

} // namespace locc
