#pragma once

#include <string>

#include <json.hpp>

#include "cli/runner.hpp"
#include "qgi/verify.hpp"

namespace qgi::cli {

/// Absent optionals are omitted; non-finite numbers become null.
nlohmann::json report_to_json(const PhaseReport& report);
PhaseReport report_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const InterferometerSpec& spec);

std::string version_string();

std::string format_phase(const RunConfig& config, const RunOutcome& outcome);
std::string format_sweep(const SweepConfig& config, const SweepOutcome& outcome);
std::string format_ledger(const RunConfig& config, const LedgerOutcome& ledger);
std::string format_verify_line(const verify::CriterionResult& result);

/// Writes to `path`, or to stdout when it is empty.
void write_output(const std::string& path, const std::string& text);

}  // namespace qgi::cli
