// library.cpp

#include "locc/library.hpp"

#include "locc/synth.hpp"

namespace locc {

namespace {

std::vector<BellLabel> full_labels(std::size_t n)
{
    std::vector<BellLabel> all;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t p = 0; p < n; ++p) {
            all.push_back({s, p});
        }
    }
    return all;
}

std::vector<BellLabel> first_labels(std::size_t n, std::size_t k)
{
    std::vector<BellLabel> all = full_labels(n);
    all.resize(k);
    return all;
}

LoccProtocol cub_protocol(const StateEnsemble& e)
{
    const auto cub = find_cub(pairwise_family(e), default_cub_candidates(e.dim_a()));
    if (!cub) {
        throw NumericalError("protocol_library: no common unbiased basis among the default candidates");
    }
    return to_protocol(synthesize_cub_protocol(e, *cub));
}

} // namespace

std::vector<LibraryEntry> protocol_library()
{
    std::vector<LibraryEntry> lib;
    auto add = [&](std::string name, LoccProtocol p, StateEnsemble e) {
        lib.push_back({std::move(name), std::move(p), std::move(e)});
    };

    for (std::size_t n = 2; n <= 5; ++n) {
        add("standard_bell/BB" + std::to_string(n), standard_bell_protocol(n, full_labels(n)), bell_basis(n));
    }
    {
        const std::vector<BellLabel> s{{0, 0}, {1, 0}, {2, 0}, {0, 1}};
        add("standard_bell/BB3-subset4", standard_bell_protocol(3, s), bell_states(3, s));
        const std::vector<BellLabel> t{{0, 0}, {0, 1}, {1, 2}};
        add("standard_bell/BB5-subset3", standard_bell_protocol(5, t), bell_states(5, t));
    }

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const StateEnsemble e = random_orthogonal_me_triple(3, seed);
        add("three_qutrit/seed" + std::to_string(seed), to_protocol(synthesize_three_qutrit_protocol(e)), e);
    }
    {
        const StateEnsemble e = bell_states(3, {{0, 0}, {0, 1}, {0, 2}});
        add("three_qutrit/clock-powers", to_protocol(synthesize_three_qutrit_protocol(e)), e);
    }

    {
        const StateEnsemble e = bell_basis(2);
        add("discard/BB2-keep2", discard_protocol(two_state_protocol(e.state(0), e.state(1)), {0, 1}, 4), e);
        const StateEnsemble t = bell_states(2, {{0, 0}, {0, 1}, {1, 0}});
        add("discard/bell3-in-2x2-keep2", discard_protocol(two_state_protocol(t.state(0), t.state(1)), {0, 1}, 3), t);
    }
    for (std::size_t k = 4; k <= 9; ++k) {
        const StateEnsemble e = bell_states(3, first_labels(3, k));
        const std::vector<std::size_t> kept{0, 1, 3};
        const LoccProtocol inner = to_protocol(synthesize_three_qutrit_protocol(e.subset(kept)));
        add("discard/BB3-first" + std::to_string(k) + "-keep3", discard_protocol(inner, kept, k), e);
    }

    {
        const StateEnsemble e3 = bell_states(3, {{0, 0}, {1, 0}, {1, 1}});
        add("cub/BB3-I-X-XZ", cub_protocol(e3), e3);
        const StateEnsemble e5 = bell_states(5, {{0, 0}, {1, 2}, {3, 4}});
        add("cub/BB5-k3", cub_protocol(e5), e5);
        const StateEnsemble e7 = bell_states(7, {{0, 0}, {1, 3}, {2, 5}, {6, 1}});
        add("cub/BB7-k4", cub_protocol(e7), e7);
    }
    {
        const StateEnsemble f = simultaneously_diagonal_ensemble(fourier_matrix(3));
        add("cub/simdiag-fourier3", to_protocol(synthesize_cub_protocol(f, fourier_matrix(3))), f);
        const StateEnsemble id = simultaneously_diagonal_ensemble(ComplexMatrix::Identity(3, 3));
        add("cub/simdiag-identity3", to_protocol(synthesize_cub_protocol(id, fourier_matrix(3))), id);
        const StateEnsemble h = simultaneously_diagonal_ensemble(haar_unitary(4, 11));
        add("cub/simdiag-haar4", to_protocol(synthesize_cub_protocol(h, fourier_matrix(4))), h);
    }

    {
        const StateEnsemble b = bell_states(2, {{0, 0}, {1, 1}});
        add("two_state/bell-pair", two_state_protocol(b.state(0), b.state(1)), b);
        const StateEnsemble p = computational_product_basis(2, 2).subset({0, 3});
        add("two_state/00-vs-11", two_state_protocol(p.state(0), p.state(1)), p);
        const StateEnsemble r23 = random_orthogonal_pair(2, 3, 5);
        add("two_state/random-2x3", two_state_protocol(r23.state(0), r23.state(1)), r23);
        const StateEnsemble r32 = random_orthogonal_pair(3, 2, 6);
        add("two_state/random-3x2", two_state_protocol(r32.state(0), r32.state(1)), r32);
        const StateEnsemble r44 = random_orthogonal_pair(4, 4, 7);
        add("two_state/random-4x4", two_state_protocol(r44.state(0), r44.state(1)), r44);
    }

    add("blind/BB2", blind_guess_protocol(2, 2, 0), bell_basis(2));
    {
        const StateEnsemble e = random_orthogonal_me_triple(3, 99);
        add("blind/random-triple", blind_guess_protocol(3, 3, 2), e);
    }

    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
        const StateEnsemble e = computational_product_basis(m, n);
        add("product/computational-" + std::to_string(m) + "x" + std::to_string(n), *product_state_protocol(e), e);
    }

    {
        const StateEnsemble e = random_orthogonal_me_triple(3, 1);
        add("padded/three_qutrit-seed1", pad_with_identity_rounds(to_protocol(synthesize_three_qutrit_protocol(e))), e);
    }
    return lib;
}

} // namespace locc
