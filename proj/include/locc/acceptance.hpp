// acceptance.hpp
// End-to-end acceptance checks. Shared by the acceptance test binary and
// `locctool selftest`.

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace locc::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

CriterionResult three_qutrit_end_to_end();
CriterionResult few_bell_states_cub();
CriterionResult bell_basis_saturation();
CriterionResult exact_f_values();
CriterionResult bound_consistency_sweep();
CriterionResult transpose_identity_property();
CriterionResult mub_verification();
CriterionResult verdict_correctness();
CriterionResult monte_carlo_agreement();

struct Criterion {
    int id;
    std::function<CriterionResult()> run;
};
std::vector<Criterion> all_criteria();

// Runs every criterion, printing one PASS/FAIL line each to `out`. Returns true
// when all pass.
bool run_all(std::ostream& out);

} // namespace locc::acceptance
