#pragma once

// Cross-engine verification suite. Each check reproduces one acceptance
// criterion of the project (see README) and reports a measured figure next to
// its pinned threshold. Used by the acceptance test binary and `qgi verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qgi/numeric.hpp"

namespace qgi::verify {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;  ///< measured value(s) against the threshold
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 0x51a7e5eedULL;
    std::size_t randomized_count = 1000;  ///< algebraic/ledger checks
    std::size_t kennard_count = 100;
    std::size_t numeric_specs = 6;        ///< random closed specs run on the grid
    numeric::Resolution resolution{};
};

/// A randomized closed spec (HalfT) with moderate dimensionless parameters.
InterferometerSpec random_closed_spec(std::uint64_t seed, std::size_t index);

CriterionResult check_levitated_reproduction(const SuiteOptions& opts);   // 1
CriterionResult check_g_form_identity(const SuiteOptions& opts);          // 2
CriterionResult check_action_ledger(const SuiteOptions& opts);            // 3
CriterionResult check_convention_bridge(const SuiteOptions& opts);        // 4
CriterionResult check_kennard_oracle(const SuiteOptions& opts);           // 5
CriterionResult check_quantum_closure(const SuiteOptions& opts);          // 6
CriterionResult check_g_sensitivity(const SuiteOptions& opts);            // 7
CriterionResult check_cubic_law(const SuiteOptions& opts);                // 8
CriterionResult check_state_independence(const SuiteOptions& opts);       // 9
CriterionResult check_split_step_convergence(const SuiteOptions& opts);   // 10

/// Runs every criterion in order. `on_result` (optional) sees each result
/// as soon as it is available.
std::vector<CriterionResult> run_all(
    const SuiteOptions& opts = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace qgi::verify
