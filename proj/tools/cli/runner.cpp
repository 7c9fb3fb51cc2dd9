#include "cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qgi/analytic.hpp"
#include "qgi/errors.hpp"
#include "qgi/numeric.hpp"

namespace qgi::cli {

namespace {

template <class Fn>
void guarded(PhaseReport& report, const char* engine, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        report.errors.push_back({engine, e.name(), e.what()});
    }
}

}  // namespace

RunOutcome run(const RunConfig& config) {
    RunOutcome out;
    PhaseReport& report = out.report;
    try {
        out.spec = build_spec(config);
    } catch (const Error& e) {
        report.errors.push_back({"model", e.name(), e.what()});
        out.exit_code = kEngineError;
        return out;
    }
    const InterferometerSpec& spec = *out.spec;

    std::optional<analytic::Complex> analytic_I;
    std::optional<analytic::Complex> numeric_I;

    if (config.engines.classical) {
        if (spec.closed) {
            guarded(report, "classical",
                    [&] { report.phi_classical = classical::phase_difference_classical(spec); });
        } else {
            report.warnings.push_back("ClosureRequired: classical engine skipped on an open loop");
        }
    }
    if (config.engines.analytic) {
        if (spec.closed) {
            guarded(report, "analytic", [&] {
                report.phi_analytic = analytic::interference_phase(spec);
                analytic_I = analytic::interference_term(spec);
            });
        } else {
            report.warnings.push_back("ClosureRequired: analytic engine skipped on an open loop");
        }
    }
    if (config.engines.numeric) {
        guarded(report, "numeric", [&] {
            numeric::InitialState initial;
            initial.width = config.width;
            const auto result = numeric::overlap_interference(spec, config.resolution, initial);
            report.abs_I_numeric = std::abs(result.I);
            if (result.closure_violation) {
                report.warnings.push_back("ClosureViolationWarning: |I| = " +
                                          std::to_string(*report.abs_I_numeric));
            }
            numeric_I = result.I;
            report.phi_numeric = numeric::extract_phase(result.I);
        });
    }

    guarded(report, "analytic", [&] {
        if (analytic_I) {
            report.probability = analytic::exit_probability(*analytic_I);
        } else if (numeric_I) {
            report.probability = analytic::exit_probability(*numeric_I);
        } else if (report.phi_classical) {
            report.probability = 0.5 * (1.0 + std::cos(*report.phi_classical));
        }
    });

    report.update_pairwise_diff();
    if (!report.errors.empty()) {
        out.exit_code = kEngineError;
    } else if (!(report.max_pairwise_diff < config.tolerance)) {
        out.exit_code = kVerifyFailure;
    }
    return out;
}

RunConfig row_config(const SweepConfig& sweep, double value) {
    RunConfig c = sweep.base;
    switch (sweep.axis) {
        case SweepAxis::G:
            c.g = value;
            break;
        case SweepAxis::A:
            c.a = value;
            c.delta_a.reset();
            break;
        case SweepAxis::DeltaA:
            c.delta_a = value;
            c.a.reset();
            break;
        case SweepAxis::T:
            c.duration = value;
            if (c.closing) c.p0.reset();
            break;
        case SweepAxis::P0:
            c.p0 = value;
            if (c.closing) c.duration.reset();
            break;
    }
    return c;
}

SweepOutcome sweep(const SweepConfig& config) {
    validate_sweep(config);
    // Surface config mistakes once, before spawning workers; engine errors
    // stay per row.
    try {
        build_spec(row_config(config, config.values.front()));
    } catch (const Error&) {
    }

    SweepOutcome out;
    out.rows.resize(config.values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < config.values.size(); i = next++) {
            out.rows[i].axis_value = config.values[i];
            out.rows[i].outcome = run(row_config(config, config.values[i]));
        }
    };

    unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(config.values.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    const auto failed = [&](int code) {
        return std::any_of(out.rows.begin(), out.rows.end(),
                           [&](const SweepRow& r) { return r.outcome.exit_code == code; });
    };
    if (failed(kEngineError)) {
        out.exit_code = kEngineError;
    } else if (failed(kVerifyFailure)) {
        out.exit_code = kVerifyFailure;
    }
    return out;
}

LedgerOutcome classical_ledger(const RunConfig& config) {
    LedgerOutcome out{build_spec(config), {}, {}, std::nullopt, std::nullopt};
    out.instantaneous = classical::arm_ledger(out.spec, classical::KickModel::Instantaneous);
    out.extrapolated = classical::arm_ledger(out.spec, classical::KickModel::FiniteExtrapolated);
    if (out.spec.forces.tau > 0.0) {
        const double v0 = out.spec.v0();
        out.kick_first_finite = classical::kick_action(out.spec.masses, out.spec.forces.g, v0,
                                                       out.spec.forces.tau, {0.0, 0.0});
        out.kick_second_finite =
            classical::kick_action(out.spec.masses, out.spec.forces.g, v0, out.spec.forces.tau,
                                   out.instantaneous.ballistic_end);
    }
    return out;
}

}  // namespace qgi::cli
