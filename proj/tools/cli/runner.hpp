#pragma once

#include <optional>
#include <vector>

#include "cli/config.hpp"
#include "qgi/classical.hpp"
#include "qgi/model.hpp"

namespace qgi::cli {

enum ExitCode : int { kPass = 0, kConfigError = 2, kEngineError = 3, kVerifyFailure = 4 };

struct RunOutcome {
    std::optional<InterferometerSpec> spec;  ///< absent when the spec could not be built
    PhaseReport report;
    int exit_code = kPass;
};

/// Runs the selected engines. ConfigError escapes; every qgi::Error is caught
/// and recorded in the report under its originating engine.
RunOutcome run(const RunConfig& config);

struct SweepRow {
    double axis_value = 0.0;
    RunOutcome outcome;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;  ///< in axis order
    int exit_code = kPass;
};

/// The base config with the swept quantity replaced by `value`. Sweeping T
/// (p0) with closing on re-solves p0 (T); sweeping g, a or delta_a keeps the
/// base's choice of which of T/p0 is fixed.
RunConfig row_config(const SweepConfig& sweep, double value);

/// Evaluates rows concurrently and returns them in axis order.
SweepOutcome sweep(const SweepConfig& config);

struct LedgerOutcome {
    InterferometerSpec spec;
    classical::ClassicalLedger instantaneous;
    classical::ClassicalLedger extrapolated;
    std::optional<double> kick_first_finite;   ///< action at the given tau, tau > 0 only
    std::optional<double> kick_second_finite;
};

LedgerOutcome classical_ledger(const RunConfig& config);

}  // namespace qgi::cli
