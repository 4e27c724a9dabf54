// qstate.hpp
// Dense complex linear algebra and the bipartite state <-> matrix correspondence.
//
// Conventions used throughout the toolkit:
//   * A state of C^m (x) C^n (Alice first, dimension m; Bob second, dimension n)
//     stores its amplitudes Alice-index major: psi[a * n + b].
//   * Its B-matrix is the n x m matrix with |psi> = (I (x) B)|ME_m>, normalized so
//     that Tr B^dagger B = m. Entry-wise, psi[a * n + b] = B(b, a) / sqrt(m).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "locc/errors.hpp"

namespace locc {

template <typename Scalar>
using ComplexMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double structural = 1e-10;
inline constexpr double algebraic = 1e-12;
inline constexpr double synthesis = 1e-8;
} // namespace tol

// Largest absolute entry of M^dagger M - I.
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& m)
{
    using Real = typename Derived::RealScalar;
    if (m.rows() != m.cols() || m.rows() == 0) {
        return std::numeric_limits<Real>::infinity();
    }
    const auto id = Derived::PlainObject::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = tol::structural)
{
    return unitarity_defect(m) <= tol;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = tol::structural)
{
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, double tol = tol::structural)
{
    if (!is_hermitian(m, tol)) {
        return false;
    }
    using Plain = typename Derived::PlainObject;
    const Plain h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

// Columns orthonormal (possibly rectangular).
template <typename Derived>
bool has_orthonormal_columns(const Eigen::MatrixBase<Derived>& m, double tol = tol::structural)
{
    using Plain = typename Derived::PlainObject;
    const Plain gram = m.adjoint() * m;
    return (gram - Plain::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

// F(j, k) = w^(jk) / sqrt(n).
ComplexMatrix fourier_matrix(std::size_t n);

// Eigen-decomposition of a normal matrix by complex Schur factorization. The Schur
// vectors are returned as the (orthonormal) eigenvectors. When `project_to_circle`
// is set each eigenvalue is rescaled to modulus one, for unitary input.
struct NormalEigensystem {
    ComplexVector eigenvalues;
    ComplexMatrix eigenvectors;
};
NormalEigensystem normal_eigensystem(const ComplexMatrix& m, bool project_to_circle = false);

// True when M commutes with its adjoint.
bool is_normal(const ComplexMatrix& m, double tol = tol::structural);

class BipartiteState {
public:
    // Amplitudes in Alice-major order; normalized on construction.
    BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes);

    std::size_t dim_a() const { return dim_a_; }
    std::size_t dim_b() const { return dim_b_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    // n x m, Tr B^dagger B = m.
    const ComplexMatrix& b_matrix() const { return b_matrix_; }
    // m x n reshaped amplitudes: C(a, b) = psi[a * n + b].
    ComplexMatrix coefficient_matrix() const;

private:
    std::size_t dim_a_;
    std::size_t dim_b_;
    ComplexVector amplitudes_;
    ComplexMatrix b_matrix_;
};

struct SchmidtDecomposition {
    RealVector coefficients;      // nonincreasing, sum to one
    ComplexMatrix left_vectors;   // Alice, columns
    ComplexMatrix right_vectors;  // Bob, columns
    double max_coefficient() const { return coefficients.size() ? coefficients(0) : 0.0; }
};

BipartiteState me_state(std::size_t n);

// B is n x dim_a; the result satisfies |psi> proportional to (I (x) B)|ME_dim_a>.
BipartiteState state_from_matrix(const ComplexMatrix& b, std::size_t dim_a);
const ComplexMatrix& matrix_from_state(const BipartiteState& state);

BipartiteState product_state(const ComplexVector& alice, const ComplexVector& bob);

// Max-abs deviation between sqrt(n)(I (x) A)|ME_n> and sqrt(m)(A^T (x) I)|ME_m> for
// an m x n matrix A, both sides computed as explicit Kronecker products.
double transpose_identity_check(const ComplexMatrix& a);

// (1/m) Tr B1^dagger B2.
Complex inner_product_via_trace(const BipartiteState& lhs, const BipartiteState& rhs);
Complex inner_product(const BipartiteState& lhs, const BipartiteState& rhs);

SchmidtDecomposition schmidt(const BipartiteState& state);

// Clock Z = sum_j w^j |j><j| and shift X = sum_j |j><j+1|, w = exp(2 pi i / n).
struct PauliPair {
    ComplexMatrix x;
    ComplexMatrix z;
};
PauliPair generalized_pauli(std::size_t n);

// X^shift Z^phase.
ComplexMatrix bell_matrix(std::size_t n, std::size_t shift, std::size_t phase);

inline Complex root_of_unity(std::size_t n, long long power)
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(power) / static_cast<double>(n);
    return std::polar(1.0, angle);
}

} // namespace locc
