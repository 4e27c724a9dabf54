// synth.cpp

#include "locc/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace locc {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * pi);
    return a <= -pi ? a + 2.0 * pi : a;
}

double angular_distance(Complex a, Complex b)
{
    return std::abs(std::arg(a * std::conj(b)));
}

// Below this magnitude a diagonal of the overlap matrix is treated as zero.
constexpr double vanishing_diagonal = 1e-8;

} // namespace

TracelessEigensystem traceless_unitary_eigensystem(const ComplexMatrix& m)
{
    if (m.rows() != 3 || m.cols() != 3) {
        throw PreconditionError("traceless_unitary_eigensystem: matrix must be 3x3");
    }
    if (!is_unitary(m, tol::structural)) {
        throw PreconditionError("traceless_unitary_eigensystem: matrix is not unitary within 1e-10");
    }
    if (std::abs(m.trace()) > 1e-8) {
        throw PreconditionError("traceless_unitary_eigensystem: |Tr M| exceeds 1e-8");
    }

    const NormalEigensystem es = normal_eigensystem(m, true);
    const ComplexVector& lambda = es.eigenvalues;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (angular_distance(lambda(i), lambda(j)) < 1e-6) {
                throw NumericalError("traceless_unitary_eigensystem: degenerate eigenvalues");
            }
        }
    }

    // det M = c^3; take the cube root nearest the first computed eigenvalue.
    const Complex det = m.determinant();
    const double base = std::arg(det) / 3.0;
    Complex phase = std::polar(1.0, base);
    for (int j = 1; j < 3; ++j) {
        const Complex cand = std::polar(1.0, base + 2.0 * pi * j / 3.0);
        if (angular_distance(cand, lambda(0)) < angular_distance(phase, lambda(0))) {
            phase = cand;
        }
    }

    std::array<bool, 3> used{false, false, false};
    std::array<int, 3> order{0, 0, 0};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Complex target = phase * root_of_unity(3, i);
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 3; ++j) {
            if (!used[j] && angular_distance(lambda(j), target) < best) {
                best = angular_distance(lambda(j), target);
                pick = j;
            }
        }
        used[pick] = true;
        order[i] = pick;
        worst = std::max(worst, best);
    }
    if (worst > 1e-6) {
        throw NumericalError("traceless_unitary_eigensystem: eigenvalues are not c*{1, w, w^2} (off by " +
                             std::to_string(worst) + " rad)");
    }

    TracelessEigensystem out;
    out.phase = phase;
    out.eigenvectors.resize(3, 3);
    for (int i = 0; i < 3; ++i) {
        out.eigenvectors.col(i) = es.eigenvectors.col(order[i]);
    }
    ComplexMatrix rebuilt = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
        rebuilt += phase * root_of_unity(3, i) * out.eigenvectors.col(i) * out.eigenvectors.col(i).adjoint();
    }
    if ((m - rebuilt).cwiseAbs().maxCoeff() > 1e-9) {
        throw NumericalError("traceless_unitary_eigensystem: reconstruction check failed");
    }
    return out;
}

ComplexMatrix PhaseSolution::row_phases() const
{
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    u(1, 1) = std::polar(1.0, alpha);
    u(2, 2) = std::polar(1.0, beta);
    return u;
}

ComplexMatrix PhaseSolution::column_phases() const
{
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    u(1, 1) = std::polar(1.0, gamma);
    u(2, 2) = std::polar(1.0, delta);
    return u;
}

ComplexVector PhaseSolution::circulant_constants() const
{
    return adjusted_overlap_matrix.row(0).transpose();
}

double circulant_defect(const ComplexMatrix& v)
{
    const auto n = v.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            worst = std::max(worst, std::abs(v(i, j) - v(0, (j - i + n) % n)));
        }
    }
    return worst;
}

PhaseSolution overlap_phase_normalize(const ComplexMatrix& e_basis, const ComplexMatrix& f_basis)
{
    if (e_basis.rows() != 3 || e_basis.cols() != 3 || f_basis.rows() != 3 || f_basis.cols() != 3) {
        throw PreconditionError("overlap_phase_normalize: bases must be 3x3");
    }
    if (!is_unitary(e_basis, tol::synthesis) || !is_unitary(f_basis, tol::synthesis)) {
        throw PreconditionError("overlap_phase_normalize: bases must be orthonormal");
    }
    const ComplexMatrix v = e_basis.adjoint() * f_basis;
    const Eigen::MatrixXd mags = v.cwiseAbs();
    double step1 = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            step1 = std::max(step1, std::abs(mags(i, j) - mags(0, (j - i + 3) % 3)));
        }
    }
    if (step1 > 1e-8) {
        throw PreconditionError("overlap_phase_normalize: |<e_i|f_j>| does not depend only on (j - i) mod 3 "
                                "(defect " + std::to_string(step1) + "); upstream states are not orthogonal");
    }

    auto arg = [&](int i, int j) { return std::arg(v(i, j)); };
    std::array<double, 3> diag_mag{};
    for (int k = 0; k < 3; ++k) {
        diag_mag[k] = mags(0, k);
    }

    PhaseSolution out;
    if (*std::min_element(diag_mag.begin(), diag_mag.end()) < vanishing_diagonal) {
        // Unitarity leaves a single nonvanishing diagonal; align its phases row by row.
        const int k = static_cast<int>(std::max_element(diag_mag.begin(), diag_mag.end()) - diag_mag.begin());
        out.alpha = wrap_angle(arg(0, k) - arg(1, (1 + k) % 3));
        out.beta = wrap_angle(arg(0, k) - arg(2, (2 + k) % 3));
    } else {
        // Phases of the first two columns fix gamma, alpha, beta; delta then matches the
        // top-right corner to entry (1, 0).
        Complex ratio(1.0, 0.0);
        for (int i = 0; i < 3; ++i) {
            ratio *= v(i, 1) * std::conj(v(i, 0));
        }
        out.gamma = wrap_angle(std::arg(ratio) / 3.0);
        out.alpha = wrap_angle(std::arg(v(0, 0) * std::conj(v(1, 1))) + out.gamma);
        out.beta = wrap_angle(std::arg(v(0, 1) * std::conj(v(2, 0))) - out.gamma);
        out.delta = wrap_angle(std::arg(v(0, 2) * std::conj(v(1, 0))) - out.alpha);
    }
    out.adjusted_overlap_matrix = out.row_phases() * v * out.column_phases().adjoint();

    const double defect = circulant_defect(out.adjusted_overlap_matrix);
    if (defect > 1e-8) {
        throw NumericalError("overlap_phase_normalize: adjusted overlap matrix is not circulant (defect " +
                             std::to_string(defect) + ")");
    }
    return out;
}

OneWayProtocolSpec synthesize_three_qutrit_protocol(const StateEnsemble& ensemble)
{
    if (ensemble.size() != 3) {
        throw PreconditionError("synthesize_three_qutrit_protocol: need exactly 3 states, got " +
                                std::to_string(ensemble.size()));
    }
    if (ensemble.dim_a() != 3 || ensemble.dim_b() != 3) {
        throw PreconditionError("synthesize_three_qutrit_protocol: states must live in C^3 (x) C^3");
    }
    if (!ensemble.is_maximally_entangled(tol::structural)) {
        throw PreconditionError("synthesize_three_qutrit_protocol: states are not maximally entangled");
    }
    if (!ensemble.is_orthogonal(tol::structural)) {
        throw PreconditionError("synthesize_three_qutrit_protocol: states are not orthogonal");
    }
    const ComplexMatrix& b1 = ensemble.state(0).b_matrix();
    const ComplexMatrix& b2 = ensemble.state(1).b_matrix();
    const ComplexMatrix& b3 = ensemble.state(2).b_matrix();

    const TracelessEigensystem e = traceless_unitary_eigensystem(b2.adjoint() * b1);
    const TracelessEigensystem f = traceless_unitary_eigensystem(b3.adjoint() * b2);
    const PhaseSolution phases = overlap_phase_normalize(e.eigenvectors, f.eigenvectors);

    // <e'_i| = U1(i, i) <e_i|.
    const ComplexMatrix aligned = e.eigenvectors * phases.row_phases().adjoint();
    const ComplexMatrix u = aligned * fourier_matrix(3);

    OneWayProtocolSpec spec = one_way_spec(u, ensemble);
    const double overlap = max_bob_overlap(spec);
    if (overlap > tol::synthesis) {
        throw NumericalError("synthesize_three_qutrit_protocol: Bob overlap " + std::to_string(overlap) +
                             " exceeds 1e-8");
    }
    return spec;
}

std::vector<PairEigenbasis> pairwise_eigenbases(const StateEnsemble& ensemble)
{
    if (ensemble.dim_a() != ensemble.dim_b()) {
        throw PreconditionError("pairwise_eigenbases: states must live in C^n (x) C^n");
    }
    const auto n = ensemble.dim_a();
    std::vector<PairEigenbasis> out;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        for (std::size_t j = i + 1; j < ensemble.size(); ++j) {
            const ComplexMatrix p = ensemble.state(i).b_matrix().adjoint() * ensemble.state(j).b_matrix();
            const double scale = 1.0 + p.cwiseAbs().maxCoeff();
            ComplexMatrix off = p;
            off.diagonal().setZero();
            if (off.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
                out.push_back({i, j, ComplexMatrix::Identity(n, n)});
                continue;
            }
            if (!is_normal(p, 1e-9 * scale * scale)) {
                throw PreconditionError("B_" + std::to_string(i) + "^dagger B_" + std::to_string(j) +
                                        " is not normal; no orthonormal eigenbasis");
            }
            out.push_back({i, j, normal_eigensystem(p).eigenvectors});
        }
    }
    return out;
}

BasisFamily pairwise_family(const StateEnsemble& ensemble)
{
    BasisFamily family;
    for (auto& pe : pairwise_eigenbases(ensemble)) {
        family.bases.push_back(std::move(pe.basis));
    }
    return family;
}

OneWayProtocolSpec synthesize_cub_protocol(const StateEnsemble& ensemble, const ComplexMatrix& cub)
{
    const auto n = ensemble.dim_a();
    if (ensemble.dim_b() != n) {
        throw PreconditionError("synthesize_cub_protocol: states must live in C^n (x) C^n");
    }
    if (static_cast<std::size_t>(cub.rows()) != n || !is_unitary(cub, tol::structural)) {
        throw PreconditionError("synthesize_cub_protocol: candidate basis must be an n x n unitary");
    }
    if (!ensemble.is_orthogonal(tol::structural)) {
        throw PreconditionError("synthesize_cub_protocol: states are not orthogonal");
    }
    for (const auto& pe : pairwise_eigenbases(ensemble)) {
        const double defect = unbiasedness_defect(cub, BasisFamily{{pe.basis}});
        if (defect > tol::synthesis) {
            throw PreconditionError("synthesize_cub_protocol: basis is not unbiased to the eigenbasis of B_" +
                                    std::to_string(pe.first) + "^dagger B_" + std::to_string(pe.second) +
                                    " (defect " + std::to_string(defect) + ")");
        }
    }
    OneWayProtocolSpec spec = one_way_spec(cub, ensemble);
    const double overlap = max_bob_overlap(spec);
    if (overlap > tol::synthesis) {
        throw NumericalError("synthesize_cub_protocol: Bob overlap " + std::to_string(overlap) + " exceeds 1e-8");
    }
    return spec;
}

std::optional<ComplexMatrix> find_cub(const BasisFamily& family, const std::vector<ComplexMatrix>& candidates, double tol)
{
    for (const auto& c : candidates) {
        if (common_unbiased_basis_check(c, family, tol)) {
            return c;
        }
    }
    return std::nullopt;
}

std::vector<ComplexMatrix> default_cub_candidates(std::size_t n)
{
    std::vector<ComplexMatrix> out;
    if (is_prime(n)) {
        out = mub_prime(n).bases;
    }
    out.push_back(fourier_matrix(n));
    out.push_back(ComplexMatrix::Identity(n, n));
    return out;
}

} // namespace locc
