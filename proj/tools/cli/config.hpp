#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgi/model.hpp"
#include "qgi/numeric.hpp"

namespace qgi::cli {

/// Bad user input: unknown keys, malformed numbers, inconsistent choices.
/// Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct EngineSet {
    bool classical = true;
    bool analytic = true;
    bool numeric = true;

    std::string to_string() const;
};

EngineSet parse_engines(std::string_view list);

struct RunConfig {
    MassPair masses;
    double g = 1.0;
    std::optional<double> a;
    std::optional<double> delta_a;
    std::optional<double> p0;
    std::optional<double> duration;
    double tau = 0.0;
    double hbar = 1.0;
    TimeConvention convention = TimeConvention::HalfT;
    bool closing = true;
    EngineSet engines;
    numeric::Resolution resolution;
    std::optional<double> width;
    double tolerance = 1e-5;
    Format format = Format::Json;
    std::string out;  ///< empty: stdout
};

/// Resolves the config into a spec. With closing on, exactly one of
/// duration/p0 must be set and the other is solved; with closing off both
/// are required and `closed` records whether they happen to close.
/// At most one of a/delta_a may be set; neither means levitation.
InterferometerSpec build_spec(const RunConfig& config);

enum class SweepAxis { G, A, DeltaA, T, P0 };

SweepAxis parse_axis(std::string_view s);
std::string_view to_string(SweepAxis axis) noexcept;

struct SweepConfig {
    RunConfig base;
    SweepAxis axis = SweepAxis::T;
    std::vector<double> values;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// `count` values from start to stop inclusive, linear or logarithmic.
std::vector<double> make_axis_values(double start, double stop, int count, bool log_spacing);

/// Throws ConfigError unless there are >= 2 strictly monotone values.
void validate_sweep(const SweepConfig& config);

/// Flat key=value settings. Keys are the long flag names without dashes
/// ("mi", "delta-a", "T", ...); underscores and dashes are interchangeable.
using Settings = std::map<std::string, std::string>;

/// Parses a key=value text file. Blank lines and '#' comments are ignored.
Settings parse_settings_text(std::string_view text);
Settings load_settings_file(const std::string& path);

RunConfig run_config_from_settings(const Settings& settings);
SweepConfig sweep_config_from_settings(const Settings& settings);

}  // namespace qgi::cli
