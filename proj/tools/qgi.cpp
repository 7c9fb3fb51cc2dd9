#include <iostream>
#include <memory>
#include <vector>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/report_io.hpp"
#include "cli/runner.hpp"
#include "qgi/errors.hpp"
#include "qgi/verify.hpp"

namespace {

using qgi::cli::Settings;

// String-valued flags collected verbatim and merged over the config file, so
// every value goes through the same parser regardless of where it came from.
struct FlagSet {
    struct Entry {
        std::string key;
        std::string value;
        CLI::Option* option = nullptr;
    };
    std::vector<std::unique_ptr<Entry>> entries;
    std::string config_path;
    bool no_closing = false;
    CLI::Option* no_closing_flag = nullptr;

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        auto e = std::make_unique<Entry>();
        e->key = key;
        e->option = app->add_option("--" + key, e->value, help);
        entries.push_back(std::move(e));
    }

    Settings settings() const {
        Settings s = config_path.empty() ? Settings{} : qgi::cli::load_settings_file(config_path);
        for (const auto& e : entries) {
            if (e->option->count() > 0) s[e->key] = e->value;
        }
        if (no_closing_flag && no_closing_flag->count() > 0) s["no-closing"] = "true";
        return s;
    }
};

void add_run_flags(CLI::App* app, FlagSet& flags) {
    app->add_option("--config", flags.config_path, "key=value settings file (flags override it)");
    flags.add(app, "mi", "inertial mass");
    flags.add(app, "mg", "gravitational mass");
    flags.add(app, "g", "gravitational field strength");
    flags.add(app, "a", "applied acceleration (default: levitation)");
    flags.add(app, "delta-a", "residual acceleration a - (mg/mi) g");
    flags.add(app, "p0", "kick momentum");
    flags.add(app, "T", "duration in the chosen convention");
    flags.add(app, "tau", "kick pulse length (0: instantaneous)");
    flags.add(app, "hbar", "reduced Planck constant");
    flags.add(app, "convention", "half or full");
    flags.add(app, "engines", "comma list of classical,analytic,numeric");
    flags.add(app, "grid-points", "numeric grid size (power of two)");
    flags.add(app, "steps", "numeric split-step count");
    flags.add(app, "method", "numeric evolution: split or kernel");
    flags.add(app, "width", "initial packet width");
    flags.add(app, "tolerance", "cross-engine tolerance in rad");
    flags.add(app, "format", "json or csv");
    flags.add(app, "out", "output path (default stdout)");
    flags.no_closing_flag = app->add_flag("--no-closing", flags.no_closing,
                                          "take T and p0 as given without enforcing closure");
}

void add_sweep_flags(CLI::App* app, FlagSet& flags) {
    flags.add(app, "axis", "g, a, delta_a, T or p0");
    flags.add(app, "values", "comma list of axis values");
    flags.add(app, "start", "range start");
    flags.add(app, "stop", "range stop");
    flags.add(app, "count", "number of range points");
    flags.add(app, "spacing", "lin or log");
    flags.add(app, "threads", "worker threads (0: all cores)");
}

int run_verify(const qgi::verify::SuiteOptions& opts) {
    bool all = true;
    qgi::verify::run_all(opts, [&](const qgi::verify::CriterionResult& r) {
        all = all && r.passed;
        std::cout << qgi::cli::format_verify_line(r) << std::endl;
    });
    std::cout << (all ? "verify: all criteria passed" : "verify: FAILED") << std::endl;
    return all ? qgi::cli::kPass : qgi::cli::kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qgi::cli;

    CLI::App app{"Two-arm matter-wave interferometer phase calculator"};
    app.require_subcommand(1);

    FlagSet phase_flags;
    auto* phase = app.add_subcommand("phase", "compute the interferometer phase with each engine");
    add_run_flags(phase, phase_flags);

    FlagSet sweep_flags;
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate the phase along one parameter axis");
    add_run_flags(sweep_cmd, sweep_flags);
    add_sweep_flags(sweep_cmd, sweep_flags);

    FlagSet ledger_flags;
    auto* ledger = app.add_subcommand("classical-ledger",
                                      "per-term action breakdown of both arms, kicks included");
    add_run_flags(ledger, ledger_flags);

    qgi::verify::SuiteOptions suite;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_option("--seed", suite.seed, "seed for the randomized specs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*phase) {
            const RunConfig config = run_config_from_settings(phase_flags.settings());
            const RunOutcome outcome = run(config);
            write_output(config.out, format_phase(config, outcome));
            return outcome.exit_code;
        }
        if (*sweep_cmd) {
            const SweepConfig config = sweep_config_from_settings(sweep_flags.settings());
            const SweepOutcome outcome = sweep(config);
            write_output(config.base.out, format_sweep(config, outcome));
            return outcome.exit_code;
        }
        if (*ledger) {
            const RunConfig config = run_config_from_settings(ledger_flags.settings());
            write_output(config.out, format_ledger(config, classical_ledger(config)));
            return kPass;
        }
        return run_verify(suite);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const qgi::Error& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return kEngineError;
    }
}
