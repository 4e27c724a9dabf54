// acceptance.cpp

#include "locc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "locc/bounds.hpp"
#include "locc/library.hpp"
#include "locc/synth.hpp"

namespace locc::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
public:
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    Clock::time_point start_ = Clock::now();
};

template <typename Body>
CriterionResult run_guarded(int id, std::string name, Body&& body)
{
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    Timer timer;
    try {
        std::ostringstream detail;
        r.passed = body(detail);
        r.detail = detail.str();
    } catch (const std::exception& ex) {
        r.passed = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = timer.seconds();
    return r;
}

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

} // namespace

CriterionResult three_qutrit_end_to_end()
{
    return run_guarded(1, "three orthogonal ME qutrit states: 200 random triples distinguished perfectly",
                       [](std::ostream& d) {
        Timer timer;
        double worst = 1.0;
        std::uint64_t worst_seed = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const StateEnsemble e = random_orthogonal_me_triple(3, seed);
            const double p = evaluate(to_protocol(synthesize_three_qutrit_protocol(e)), e).success_probability;
            if (p < worst) {
                worst = p;
                worst_seed = seed;
            }
        }
        const double elapsed = timer.seconds();
        d << "min success " << fmt(worst) << " (seed " << worst_seed << "), " << elapsed << " s";
        return worst >= 1.0 - 1e-9 && elapsed < 10.0;
    });
}

CriterionResult few_bell_states_cub()
{
    return run_guarded(2, "Bell subsets with k(k-1)/2 <= n, n in {3,5,7}: CUB protocol is perfect", [](std::ostream& d) {
        Timer timer;
        std::mt19937_64 rng(20240917);
        std::size_t cases = 0;
        double worst = 1.0;
        for (std::size_t n : {3u, 5u, 7u}) {
            std::size_t kmax = 2;
            while ((kmax + 1) * kmax / 2 <= n) {
                ++kmax;
            }
            const BasisFamily mubs = mub_prime(n);
            for (int sample = 0; sample < 50; ++sample) {
                const std::size_t k = 2 + static_cast<std::size_t>(rng() % (kmax - 1));
                std::vector<std::size_t> idx(n * n);
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                for (std::size_t i = 0; i < k; ++i) {
                    std::swap(idx[i], idx[i + static_cast<std::size_t>(rng() % (idx.size() - i))]);
                }
                std::vector<BellLabel> labels;
                for (std::size_t i = 0; i < k; ++i) {
                    labels.push_back({idx[i] / n, idx[i] % n});
                }
                const StateEnsemble e = bell_states(n, labels);
                const auto cub = find_cub(pairwise_family(e), mubs.bases);
                if (!cub) {
                    d << "no common unbiased basis found for n = " << n << ", k = " << k;
                    return false;
                }
                worst = std::min(worst, evaluate(to_protocol(synthesize_cub_protocol(e, *cub)), e).success_probability);
                ++cases;
            }
        }
        const double elapsed = timer.seconds();
        d << cases << " subsets, min success " << fmt(worst) << ", " << elapsed << " s";
        return worst >= 1.0 - 1e-9 && elapsed < 30.0;
    });
}

CriterionResult bell_basis_saturation()
{
    return run_guarded(3, "standard protocol on BB_n, n = 2..5: success 1/n and I(V;YZ) = log2 n", [](std::ostream& d) {
        bool ok = true;
        for (std::size_t n = 2; n <= 5; ++n) {
            std::vector<BellLabel> all;
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t p = 0; p < n; ++p) {
                    all.push_back({s, p});
                }
            }
            const ProtocolEvaluation ev = evaluate(standard_bell_protocol(n, all), bell_basis(n));
            const double dp = std::abs(ev.success_probability - 1.0 / static_cast<double>(n));
            const double di = std::abs(ev.mutual_information_bits - std::log2(static_cast<double>(n)));
            d << "n=" << n << ": |dP| " << dp << ", |dI| " << di << "; ";
            ok = ok && dp <= 1e-12 && di <= 1e-10;
        }
        return ok;
    });
}

CriterionResult exact_f_values()
{
    return run_guarded(4, "discard strategies reach 2/3, 1/2 in C^2(x)C^2 and 3/k in C^3(x)C^3", [](std::ostream& d) {
        bool ok = true;
        auto check = [&](const std::string& what, double got, double want) {
            const double err = std::abs(got - want);
            d << what << " " << fmt(got) << " (err " << err << "); ";
            ok = ok && err <= 1e-12;
        };
        {
            const StateEnsemble e = bell_states(2, {{0, 0}, {0, 1}, {1, 0}});
            const LoccProtocol p = discard_protocol(two_state_protocol(e.state(0), e.state(1)), {0, 1}, 3);
            check("k=3 in 2x2:", evaluate(p, e).success_probability, 2.0 / 3.0);
        }
        {
            const StateEnsemble e = bell_basis(2);
            const LoccProtocol p = discard_protocol(two_state_protocol(e.state(0), e.state(1)), {0, 1}, 4);
            check("k=4 in 2x2:", evaluate(p, e).success_probability, 0.5);
        }
        const StateEnsemble bb3 = bell_basis(3);
        for (std::size_t k = 4; k <= 9; ++k) {
            std::vector<std::size_t> first(k);
            std::iota(first.begin(), first.end(), std::size_t{0});
            const StateEnsemble e = bb3.subset(first);
            const std::vector<std::size_t> kept{0, 4, 8};
            const std::vector<std::size_t> usable = k > 8 ? kept : std::vector<std::size_t>{0, 1, 3};
            const LoccProtocol inner = to_protocol(synthesize_three_qutrit_protocol(e.subset(usable)));
            check("k=" + std::to_string(k) + " in 3x3:", evaluate(discard_protocol(inner, usable, k), e).success_probability,
                  3.0 / static_cast<double>(k));
        }
        return ok;
    });
}

CriterionResult bound_consistency_sweep()
{
    return run_guarded(5, "library sweep: no success or information exceeds an applicable upper bound",
                       [](std::ostream& d) {
        const auto lib = protocol_library();
        bool ok = lib.size() >= 30;
        std::size_t checks = 0;
        for (const auto& entry : lib) {
            const ProtocolEvaluation ev = evaluate(entry.protocol, entry.ensemble);
            if (entry.ensemble.has_uniform_priors()) {
                const double s = schmidt_bound(entry.ensemble);
                ++checks;
                if (ev.success_probability > s + 1e-9) {
                    d << entry.name << ": success " << fmt(ev.success_probability) << " > Schmidt bound " << fmt(s) << "; ";
                    ok = false;
                }
                if (const auto b = bob_unitary_bound(entry.ensemble)) {
                    ++checks;
                    if (ev.success_probability > *b + 1e-9) {
                        d << entry.name << ": success " << fmt(ev.success_probability) << " > n/k " << fmt(*b) << "; ";
                        ok = false;
                    }
                }
            }
            const double h = entropy_bound_bits(entry.ensemble);
            ++checks;
            if (ev.mutual_information_bits > h + 1e-9) {
                d << entry.name << ": I " << fmt(ev.mutual_information_bits) << " > entropy bound " << fmt(h) << "; ";
                ok = false;
            }
        }
        d << lib.size() << " pairs, " << checks << " inequalities";
        return ok;
    });
}

CriterionResult transpose_identity_property()
{
    return run_guarded(6, "transpose identity on 1000 random matrices within 1e-12", [](std::ostream& d) {
        std::mt19937_64 rng(6);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const auto m = 1 + static_cast<Eigen::Index>(rng() % 5);
            const auto n = 1 + static_cast<Eigen::Index>(rng() % 5);
            ComplexMatrix a(m, n);
            for (Eigen::Index i = 0; i < m; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    a(i, j) = Complex(re, im);
                }
            }
            worst = std::max(worst, transpose_identity_check(a));
        }
        d << "max deviation " << worst;
        return worst <= 1e-12;
    });
}

CriterionResult mub_verification()
{
    return run_guarded(7, "prime-dimension MUBs, n in {2,3,5,7}: all overlaps 1/n within 1e-10", [](std::ostream& d) {
        bool ok = true;
        for (std::size_t n : {2u, 3u, 5u, 7u}) {
            const BasisFamily f = mub_prime(n);
            double worst = 0.0;
            for (std::size_t a = 0; a < f.size(); ++a) {
                ok = ok && is_unitary(f.bases[a], 1e-10);
                for (std::size_t b = 0; b < f.size(); ++b) {
                    if (a == b) {
                        continue;
                    }
                    const Eigen::MatrixXd sq = (f.bases[a].adjoint() * f.bases[b]).cwiseAbs2();
                    worst = std::max(worst, (sq.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff());
                }
            }
            d << "n=" << n << ": " << f.size() << " bases, max dev " << worst << "; ";
            ok = ok && f.size() == n + 1 && worst <= 1e-10;
        }
        return ok;
    });
}

CriterionResult verdict_correctness()
{
    return run_guarded(8, "verdicts on Bell, product, random ME triple and 4-state ME ensembles", [](std::ostream& d) {
        bool ok = true;
        auto expect = [&](const std::string& what, const StateEnsemble& e, Verdict want) {
            const BoundsReport r = verdict(e);
            d << what << " -> " << to_string(r.verdict) << "; ";
            ok = ok && r.verdict == want;
        };
        expect("BB2", bell_basis(2), Verdict::PerfectImpossible);
        expect("product 2x2", computational_product_basis(2, 2), Verdict::PerfectPossible);
        expect("product 2x3", computational_product_basis(2, 3), Verdict::PerfectPossible);
        expect("product 3x3", computational_product_basis(3, 3), Verdict::PerfectPossible);
        {
            // Local rotations of the computational product basis.
            const ComplexMatrix ua = haar_unitary(3, 41);
            const ComplexMatrix ub = haar_unitary(2, 42);
            std::vector<BipartiteState> states;
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 2; ++b) {
                    states.push_back(product_state(ua.col(a), ub.col(b)));
                }
            }
            expect("rotated product 3x2", StateEnsemble(states), Verdict::PerfectPossible);
        }
        for (std::uint64_t seed : {3u, 17u, 123u}) {
            expect("ME triple seed " + std::to_string(seed), random_orthogonal_me_triple(3, seed), Verdict::PerfectPossible);
        }
        expect("4 Bell states in 3x3", bell_states(3, {{0, 0}, {1, 1}, {2, 0}, {0, 2}}), Verdict::PerfectImpossible);
        {
            const ComplexMatrix u = haar_unitary(3, 5);
            const ComplexMatrix w = haar_unitary(3, 6);
            std::vector<BipartiteState> states;
            for (auto [s, p] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 2}}) {
                states.push_back(state_from_matrix(u * bell_matrix(3, s, p) * w, 3));
            }
            expect("4 rotated ME states in 3x3", StateEnsemble(states), Verdict::PerfectImpossible);
        }
        return ok;
    });
}

CriterionResult monte_carlo_agreement()
{
    return run_guarded(9, "simulate vs evaluate within 5 sigma at 1e5 trials for every library protocol",
                       [](std::ostream& d) {
        Timer timer;
        const auto lib = protocol_library();
        bool ok = true;
        double worst_z = 0.0;
        std::uint64_t seed = 1000;
        for (const auto& entry : lib) {
            const double p = evaluate(entry.protocol, entry.ensemble).success_probability;
            const SimulationResult sim = simulate(entry.protocol, entry.ensemble, 100000, seed++);
            const double sigma = sim.standard_error(p);
            const double diff = std::abs(sim.rate - p);
            if (sigma > 0.0) {
                worst_z = std::max(worst_z, diff / sigma);
            }
            if (diff > 5.0 * sigma + 1e-9) {
                d << entry.name << ": rate " << fmt(sim.rate) << " vs " << fmt(p) << "; ";
                ok = false;
            }
        }
        const double elapsed = timer.seconds();
        d << lib.size() << " protocols, worst |z| " << worst_z << ", " << elapsed << " s";
        return ok && elapsed < 60.0;
    });
}

std::vector<Criterion> all_criteria()
{
    return {{1, three_qutrit_end_to_end}, {2, few_bell_states_cub},           {3, bell_basis_saturation},
            {4, exact_f_values},          {5, bound_consistency_sweep}, {6, transpose_identity_property},
            {7, mub_verification},        {8, verdict_correctness},     {9, monte_carlo_agreement}};
}

bool run_all(std::ostream& out)
{
    bool all = true;
    for (const auto& c : all_criteria()) {
        const CriterionResult r = c.run();
        out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " -- " << r.detail << " ("
            << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << "\n";
        all = all && r.passed;
    }
    out << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all;
}

} // namespace locc::acceptance
