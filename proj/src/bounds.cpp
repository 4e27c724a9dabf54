// bounds.cpp

#include "locc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "locc/synth.hpp"

namespace locc {

namespace {

std::size_t ceil_sqrt(std::size_t k)
{
    std::size_t r = 0;
    while (r * r < k) {
        ++r;
    }
    return r;
}

double ratio(std::size_t num, std::size_t den)
{
    return static_cast<double>(num) / static_cast<double>(den);
}

void require_ordered(const BoundPair& b, const char* what)
{
    if (b.lower > b.upper + 1e-15) {
        throw NumericalError(std::string("internal: lower bound exceeds upper bound for ") + what);
    }
}

} // namespace

BoundPair fme_bounds(std::size_t k, std::size_t n)
{
    if (n < 2) {
        throw DomainError("fme_bounds: n must be at least 2");
    }
    if (k == 2) {
        return {1.0, 1.0};
    }
    if (k < n || k > n * n) {
        throw DomainError("fme_bounds: need n <= k <= n^2 (or k = 2), got k = " + std::to_string(k) +
                          ", n = " + std::to_string(n));
    }
    if (n == 3) {
        return {ratio(3, k), ratio(3, k)};
    }
    return {ratio(2, k), ratio(n, k)};
}

BoundPair f_bounds(std::size_t k, std::size_t n)
{
    if (n < 2 || k < 2 || k > n * n) {
        throw DomainError("f_bounds: need n >= 2 and 2 <= k <= n^2, got k = " + std::to_string(k) +
                          ", n = " + std::to_string(n));
    }
    return {ratio(2, k), ratio(ceil_sqrt(k), k)};
}

BoundPair f_mixed_dims_bounds(std::size_t k, std::size_t m, std::size_t n)
{
    if (m == 0 || m > n) {
        throw DomainError("f_mixed_dims_bounds: need 1 <= m <= n");
    }
    if (k < 2 || k > m * n) {
        throw DomainError("f_mixed_dims_bounds: need 2 <= k <= m n, got k = " + std::to_string(k));
    }
    const double lower = f_bounds(k, n).lower;
    if (k <= m * m) {
        return {lower, f_bounds(k, m).upper};
    }
    return {lower, std::min(1.0, ratio(n, k))};
}

BoundPair g_bounds_bits(std::size_t k, std::size_t n)
{
    if (k <= 1 || k > n * n) {
        throw DomainError("g_bounds_bits: need 1 < k <= n^2");
    }
    return {ratio(2, k), std::log2(static_cast<double>(ceil_sqrt(k)))};
}

double schmidt_bound(const StateEnsemble& ensemble)
{
    if (!ensemble.has_uniform_priors()) {
        throw DomainError("schmidt_bound: assumes equally probable states; priors are not uniform");
    }
    double lambda = 0.0;
    for (const auto& s : ensemble.states()) {
        lambda = std::max(lambda, schmidt(s).max_coefficient());
    }
    const double mn = static_cast<double>(ensemble.dim_a() * ensemble.dim_b());
    return std::min(1.0, lambda * mn / static_cast<double>(ensemble.size()));
}

bool bob_unitarily_related(const StateEnsemble& ensemble, double tol)
{
    const ComplexMatrix& b0 = ensemble.state(0).b_matrix();
    const ComplexMatrix g0 = b0.adjoint() * b0;
    for (std::size_t i = 1; i < ensemble.size(); ++i) {
        const ComplexMatrix& bi = ensemble.state(i).b_matrix();
        if ((bi.adjoint() * bi - g0).cwiseAbs().maxCoeff() > tol) {
            return false;
        }
    }
    return true;
}

std::optional<double> bob_unitary_bound(const StateEnsemble& ensemble)
{
    if (!ensemble.has_uniform_priors()) {
        throw DomainError("bob_unitary_bound: assumes equally probable states; priors are not uniform");
    }
    const std::size_t k = ensemble.size();
    const std::size_t m = ensemble.dim_a();
    const std::size_t n = ensemble.dim_b();
    if (k < n || k > m * n || !bob_unitarily_related(ensemble)) {
        return std::nullopt;
    }
    return ratio(n, k);
}

ComplexMatrix reduced_alice(const BipartiteState& state)
{
    const ComplexMatrix c = state.coefficient_matrix();
    return c * c.adjoint();
}

ComplexMatrix reduced_bob(const BipartiteState& state)
{
    const ComplexMatrix c = state.coefficient_matrix();
    return (c.adjoint() * c).transpose();
}

double von_neumann_entropy_bits(const ComplexMatrix& rho)
{
    const ComplexMatrix h = (rho + rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-15) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

double entropy_bound_bits(const StateEnsemble& ensemble)
{
    const auto m = static_cast<Eigen::Index>(ensemble.dim_a());
    const auto n = static_cast<Eigen::Index>(ensemble.dim_b());
    ComplexMatrix rho_a = ComplexMatrix::Zero(m, m);
    ComplexMatrix rho_b = ComplexMatrix::Zero(n, n);
    double conditional = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double p = ensemble.priors()[i];
        const ComplexMatrix a = reduced_alice(ensemble.state(i));
        rho_a += p * a;
        rho_b += p * reduced_bob(ensemble.state(i));
        conditional += p * von_neumann_entropy_bits(a);
    }
    return von_neumann_entropy_bits(rho_a) + von_neumann_entropy_bits(rho_b) - conditional;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::PerfectPossible:
        return "PerfectPossible";
    case Verdict::PerfectImpossible:
        return "PerfectImpossible";
    case Verdict::Unknown:
        break;
    }
    return "Unknown";
}

std::optional<PerfectProtocol> find_perfect_protocol(const StateEnsemble& ensemble)
{
    const std::size_t k = ensemble.size();
    const std::size_t m = ensemble.dim_a();
    const std::size_t n = ensemble.dim_b();

    std::vector<std::pair<std::string, std::function<LoccProtocol()>>> attempts;
    if (k == 1) {
        attempts.emplace_back("single_state", [&] { return blind_guess_protocol(m, n, 0); });
    }
    if (k == 2) {
        attempts.emplace_back("two_state", [&] { return two_state_protocol(ensemble.state(0), ensemble.state(1)); });
    }
    if (k == 3 && m == 3 && n == 3 && ensemble.is_maximally_entangled()) {
        attempts.emplace_back("three_qutrit", [&] { return to_protocol(synthesize_three_qutrit_protocol(ensemble)); });
    }
    if (m == n && k > 1) {
        attempts.emplace_back("common_unbiased_basis", [&] {
            const auto cub = find_cub(pairwise_family(ensemble), default_cub_candidates(n));
            if (!cub) {
                throw PreconditionError("no candidate common unbiased basis");
            }
            return to_protocol(synthesize_cub_protocol(ensemble, *cub));
        });
    }
    attempts.emplace_back("product_states", [&] {
        auto p = product_state_protocol(ensemble);
        if (!p) {
            throw PreconditionError("states are not a locally sortable product family");
        }
        return *p;
    });

    for (auto& [name, build] : attempts) {
        try {
            LoccProtocol protocol = build();
            if (evaluate(protocol, ensemble).success_probability >= 1.0 - 1e-9) {
                return PerfectProtocol{name, std::move(protocol)};
            }
        } catch (const PreconditionError&) {
        } catch (const NumericalError&) {
        }
    }
    return std::nullopt;
}

BoundsReport verdict(const StateEnsemble& ensemble)
{
    if (!ensemble.is_orthogonal(tol::structural)) {
        throw PreconditionError("verdict: ensemble is not orthogonal within 1e-10");
    }
    BoundsReport r;
    r.k = ensemble.size();
    r.m = ensemble.dim_a();
    r.n = ensemble.dim_b();
    for (const auto& s : ensemble.states()) {
        r.lambda_max = std::max(r.lambda_max, schmidt(s).max_coefficient());
    }

    if (r.k < 2) {
        r.f_lower = r.f_upper = 1.0;
    } else {
        const BoundPair f = r.m == r.n ? f_bounds(r.k, r.n) : f_mixed_dims_bounds(r.k, std::min(r.m, r.n), std::max(r.m, r.n));
        require_ordered(f, "f");
        r.f_lower = f.lower;
        r.f_upper = f.upper;
    }
    if (ensemble.is_maximally_entangled() && r.n >= 2 && (r.k == 2 || (r.k >= r.n && r.k <= r.n * r.n))) {
        const BoundPair fme = fme_bounds(r.k, r.n);
        require_ordered(fme, "f_me");
        r.fme_lower = fme.lower;
        r.fme_upper = fme.upper;
    }
    if (r.m == r.n && r.k > 1 && r.k <= r.n * r.n) {
        const BoundPair g = g_bounds_bits(r.k, r.n);
        require_ordered(g, "g");
        r.g_lower_bits = g.lower;
        r.g_upper_bits = g.upper;
    }

    // Perfect discrimination does not depend on the (positive) priors, so the
    // equal-prior bounds apply to the verdict regardless of the given priors.
    const StateEnsemble uniform = ensemble.with_uniform_priors();
    r.schmidt_upper = schmidt_bound(uniform);
    r.witnesses.push_back({"Prop8:schmidt", r.schmidt_upper, "success <= min(1, lambda_M m n / k)"});
    r.bob_unitary_upper = bob_unitary_bound(uniform);
    if (r.bob_unitary_upper) {
        r.witnesses.push_back({"Lemma7:bob-unitary", *r.bob_unitary_upper,
                               "states related by Bob unitaries: success <= n / k"});
    }
    r.entropy_upper_bits = entropy_bound_bits(ensemble);
    r.witnesses.push_back({"Eq30:entropy", r.entropy_upper_bits,
                           "I(V;YZ) <= S(rho_A) + S(rho_B) - sum_i p_i S(rho_A^i) [bits]"});

    const bool impossible = r.schmidt_upper < 1.0 - 1e-12 || (r.bob_unitary_upper && *r.bob_unitary_upper < 1.0 - 1e-12);
    if (impossible) {
        r.verdict = Verdict::PerfectImpossible;
        return r;
    }
    if (auto found = find_perfect_protocol(ensemble)) {
        r.verdict = Verdict::PerfectPossible;
        r.perfect_protocol_source = found->source;
    }
    return r;
}

} // namespace locc
