// qstate.cpp

#include "locc/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace locc {

namespace {

ComplexMatrix b_matrix_from_amplitudes(std::size_t m, std::size_t n, const ComplexVector& psi)
{
    ComplexMatrix b(n, m);
    const double scale = std::sqrt(static_cast<double>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t j = 0; j < n; ++j) {
            b(j, a) = scale * psi(a * n + j);
        }
    }
    return b;
}

ComplexVector me_vector(std::size_t n)
{
    ComplexVector v = ComplexVector::Zero(n * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        v(j * n + j) = amp;
    }
    return v;
}

} // namespace

ComplexMatrix fourier_matrix(std::size_t n)
{
    if (n == 0) {
        throw DomainError("fourier_matrix: dimension must be positive");
    }
    ComplexMatrix f(n, n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            f(j, k) = amp * root_of_unity(n, static_cast<long long>((j * k) % n));
        }
    }
    return f;
}

NormalEigensystem normal_eigensystem(const ComplexMatrix& m, bool project_to_circle)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DomainError("normal_eigensystem: matrix must be square and nonempty");
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(m);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("normal_eigensystem: Schur factorization did not converge");
    }
    NormalEigensystem out;
    out.eigenvalues = schur.matrixT().diagonal();
    out.eigenvectors = schur.matrixU();
    if (project_to_circle) {
        for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
            const double r = std::abs(out.eigenvalues(i));
            if (r > 0.0) {
                out.eigenvalues(i) /= r;
            }
        }
    }
    return out;
}

bool is_normal(const ComplexMatrix& m, double tol)
{
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m * m.adjoint() - m.adjoint() * m).cwiseAbs().maxCoeff() <= tol;
}

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes))
{
    if (dim_a == 0 || dim_b == 0) {
        throw DomainError("BipartiteState: dimensions must be positive");
    }
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_a * dim_b) {
        throw DomainError("BipartiteState: expected " + std::to_string(dim_a * dim_b) +
                          " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    const double norm = amplitudes_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DomainError("BipartiteState: amplitude vector must be nonzero and finite");
    }
    amplitudes_ /= norm;
    b_matrix_ = b_matrix_from_amplitudes(dim_a_, dim_b_, amplitudes_);
}

ComplexMatrix BipartiteState::coefficient_matrix() const
{
    ComplexMatrix c(dim_a_, dim_b_);
    for (std::size_t a = 0; a < dim_a_; ++a) {
        for (std::size_t b = 0; b < dim_b_; ++b) {
            c(a, b) = amplitudes_(a * dim_b_ + b);
        }
    }
    return c;
}

BipartiteState me_state(std::size_t n)
{
    if (n == 0) {
        throw DomainError("me_state: n must be at least 1");
    }
    return BipartiteState(n, n, me_vector(n));
}

BipartiteState state_from_matrix(const ComplexMatrix& b, std::size_t dim_a)
{
    if (dim_a == 0 || static_cast<std::size_t>(b.cols()) != dim_a || b.rows() == 0) {
        throw DomainError("state_from_matrix: B must have dim_a columns and at least one row");
    }
    if (!(b.squaredNorm() > 0.0)) {
        throw DomainError("state_from_matrix: B must be nonzero");
    }
    const std::size_t n = static_cast<std::size_t>(b.rows());
    ComplexVector psi(dim_a * n);
    for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t j = 0; j < n; ++j) {
            psi(a * n + j) = b(j, a);
        }
    }
    return BipartiteState(dim_a, n, std::move(psi));
}

const ComplexMatrix& matrix_from_state(const BipartiteState& state)
{
    return state.b_matrix();
}

BipartiteState product_state(const ComplexVector& alice, const ComplexVector& bob)
{
    ComplexVector psi(alice.size() * bob.size());
    for (Eigen::Index a = 0; a < alice.size(); ++a) {
        psi.segment(a * bob.size(), bob.size()) = alice(a) * bob;
    }
    return BipartiteState(static_cast<std::size_t>(alice.size()), static_cast<std::size_t>(bob.size()),
                          std::move(psi));
}

double transpose_identity_check(const ComplexMatrix& a)
{
    const auto m = static_cast<std::size_t>(a.rows());
    const auto n = static_cast<std::size_t>(a.cols());
    if (m == 0 || n == 0) {
        return 0.0;
    }
    const ComplexMatrix id_n = ComplexMatrix::Identity(n, n);
    const ComplexMatrix id_m = ComplexMatrix::Identity(m, m);
    const ComplexMatrix lhs_op = Eigen::kroneckerProduct(id_n, a);
    const ComplexMatrix rhs_op = Eigen::kroneckerProduct(ComplexMatrix(a.transpose()), id_m);
    const ComplexVector lhs = std::sqrt(static_cast<double>(n)) * lhs_op * me_vector(n);
    const ComplexVector rhs = std::sqrt(static_cast<double>(m)) * rhs_op * me_vector(m);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

Complex inner_product_via_trace(const BipartiteState& lhs, const BipartiteState& rhs)
{
    if (lhs.dim_a() != rhs.dim_a() || lhs.dim_b() != rhs.dim_b()) {
        throw DomainError("inner_product_via_trace: dimension mismatch");
    }
    return (lhs.b_matrix().adjoint() * rhs.b_matrix()).trace() / static_cast<double>(lhs.dim_a());
}

Complex inner_product(const BipartiteState& lhs, const BipartiteState& rhs)
{
    if (lhs.dim_a() != rhs.dim_a() || lhs.dim_b() != rhs.dim_b()) {
        throw DomainError("inner_product: dimension mismatch");
    }
    return lhs.amplitudes().dot(rhs.amplitudes());
}

SchmidtDecomposition schmidt(const BipartiteState& state)
{
    const ComplexMatrix c = state.coefficient_matrix();
    Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.coefficients = svd.singularValues().array().square().matrix();
    const double total = out.coefficients.sum();
    out.coefficients /= total;
    out.left_vectors = svd.matrixU();
    out.right_vectors = svd.matrixV().conjugate();

    // ||B^dagger B||_inf equals m times the largest Schmidt coefficient.
    const ComplexMatrix& b = state.b_matrix();
    const ComplexMatrix gram = b.adjoint() * b;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
    const double op_norm = es.eigenvalues().maxCoeff();
    if (std::abs(op_norm / static_cast<double>(state.dim_a()) - out.max_coefficient()) > 1e-10) {
        throw NumericalError("schmidt: operator-norm check on B^dagger B failed");
    }
    return out;
}

PauliPair generalized_pauli(std::size_t n)
{
    if (n < 2) {
        throw DomainError("generalized_pauli: n must be at least 2");
    }
    PauliPair p{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        p.z(j, j) = root_of_unity(n, static_cast<long long>(j));
        p.x(j, (j + 1) % n) = 1.0;
    }
    return p;
}

ComplexMatrix bell_matrix(std::size_t n, std::size_t shift, std::size_t phase)
{
    const PauliPair p = generalized_pauli(n);
    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < shift % n; ++i) {
        out = out * p.x;
    }
    for (std::size_t i = 0; i < phase % n; ++i) {
        out = out * p.z;
    }
    return out;
}

} // namespace locc
