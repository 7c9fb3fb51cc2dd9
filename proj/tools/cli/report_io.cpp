#include "cli/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef QGI_VERSION_STRING
#define QGI_VERSION_STRING "unknown"
#endif

namespace qgi::cli {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void put(json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = number(*v);
}

std::optional<double> get(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (it->is_null()) return std::nan("");
    return it->get<double>();
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : ""; }

std::string errors_cell(const PhaseReport& r) {
    std::string out;
    for (const auto& e : r.errors) {
        if (!out.empty()) out += ';';
        out += e.engine + ':' + e.error;
    }
    return out;
}

std::string method_name(numeric::EvolutionMethod m) {
    return m == numeric::EvolutionMethod::SplitStep ? "split" : "kernel";
}

std::string csv_header(const RunConfig& c, std::string_view extra) {
    std::ostringstream os;
    os << "# qgi " << version_string() << " engines=" << c.engines.to_string()
       << " tolerance=" << csv_number(c.tolerance) << " convention=" << to_string(c.convention)
       << " closing=" << (c.closing ? "on" : "off") << " grid_points=" << c.resolution.n_points
       << " steps=" << c.resolution.n_steps << " method=" << method_name(c.resolution.method)
       << extra << '\n';
    return os.str();
}

std::string csv_row(const PhaseReport& r) {
    return csv_number(r.phi_classical) + ',' + csv_number(r.phi_analytic) + ',' +
           csv_number(r.phi_numeric) + ',' + csv_number(r.abs_I_numeric) + ',' +
           csv_number(r.probability) + ',' + csv_number(r.max_pairwise_diff) + ',' +
           errors_cell(r);
}

constexpr const char* kColumns =
    "phi_classical,phi_analytic,phi_numeric,abs_I,probability,max_pairwise_diff,errors";

json config_json(const RunConfig& c) {
    return json{{"engines", c.engines.to_string()},
                {"tolerance", c.tolerance},
                {"closing", c.closing},
                {"grid_points", c.resolution.n_points},
                {"steps", c.resolution.n_steps},
                {"method", method_name(c.resolution.method)}};
}

json arm_json(const classical::ArmLedger& arm, double hbar) {
    return json{{"free_flight", arm.action_free_flight / hbar},
                {"kick_first", arm.action_kick_first / hbar},
                {"kick_second", arm.action_kick_second / hbar},
                {"total", arm.total_phase}};
}

}  // namespace

std::string version_string() { return QGI_VERSION_STRING; }

json report_to_json(const PhaseReport& r) {
    json j = json::object();
    put(j, "phi_classical", r.phi_classical);
    put(j, "phi_analytic", r.phi_analytic);
    put(j, "phi_numeric", r.phi_numeric);
    put(j, "abs_I_numeric", r.abs_I_numeric);
    j["probability"] = number(r.probability);
    j["max_pairwise_diff"] = number(r.max_pairwise_diff);
    j["warnings"] = r.warnings;
    json errors = json::array();
    for (const auto& e : r.errors) {
        errors.push_back({{"engine", e.engine}, {"error", e.error}, {"message", e.message}});
    }
    j["errors"] = errors;
    return j;
}

PhaseReport report_from_json(const json& j) {
    PhaseReport r;
    r.phi_classical = get(j, "phi_classical");
    r.phi_analytic = get(j, "phi_analytic");
    r.phi_numeric = get(j, "phi_numeric");
    r.abs_I_numeric = get(j, "abs_I_numeric");
    r.probability = get(j, "probability").value_or(1.0);
    r.max_pairwise_diff = get(j, "max_pairwise_diff").value_or(0.0);
    if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("errors")) {
        for (const auto& e : j.at("errors")) {
            r.errors.push_back({e.at("engine").get<std::string>(), e.at("error").get<std::string>(),
                                e.at("message").get<std::string>()});
        }
    }
    return r;
}

json spec_to_json(const InterferometerSpec& s) {
    return json{{"mi", s.masses.inertial},
                {"mg", s.masses.gravitational},
                {"g", s.forces.g},
                {"a", s.forces.a},
                {"delta_a", s.delta_a()},
                {"p0", s.forces.p0},
                {"T", s.duration},
                {"total_time", s.total_time()},
                {"tau", s.forces.tau},
                {"hbar", s.forces.hbar},
                {"convention", std::string(to_string(s.convention))},
                {"closed", s.closed}};
}

std::string format_phase(const RunConfig& c, const RunOutcome& o) {
    if (c.format == Format::Csv) {
        return csv_header(c, "") + kColumns + '\n' + csv_row(o.report) + '\n';
    }
    json j{{"qgi_version", version_string()},
           {"config", config_json(c)},
           {"report", report_to_json(o.report)},
           {"exit_code", o.exit_code}};
    if (o.spec) j["spec"] = spec_to_json(*o.spec);
    return j.dump(2) + '\n';
}

std::string format_sweep(const SweepConfig& c, const SweepOutcome& o) {
    if (c.base.format == Format::Csv) {
        std::string out = csv_header(c.base, std::string(" axis=") + std::string(to_string(c.axis)));
        out += "axis_value,";
        out += kColumns;
        out += '\n';
        for (const auto& row : o.rows) {
            out += csv_number(row.axis_value) + ',' + csv_row(row.outcome.report) + '\n';
        }
        return out;
    }
    json rows = json::array();
    for (const auto& row : o.rows) {
        json r{{"axis_value", row.axis_value}, {"report", report_to_json(row.outcome.report)}};
        if (row.outcome.spec) r["spec"] = spec_to_json(*row.outcome.spec);
        rows.push_back(std::move(r));
    }
    json j{{"qgi_version", version_string()},
           {"config", config_json(c.base)},
           {"axis", std::string(to_string(c.axis))},
           {"rows", rows},
           {"exit_code", o.exit_code}};
    return j.dump(2) + '\n';
}

std::string format_ledger(const RunConfig& c, const LedgerOutcome& l) {
    const double hbar = l.spec.forces.hbar;
    const auto& led = l.instantaneous;
    // What remains when the kick actions and the applied-force potential are dropped.
    const double truncated = led.ballistic.action_free_flight / hbar -
                             (led.reference_kinetic + led.reference_gravity_potential) / hbar;
    json ballistic = arm_json(led.ballistic, hbar);
    ballistic["kick_first_extrapolated"] = l.extrapolated.ballistic.action_kick_first / hbar;
    ballistic["kick_second_extrapolated"] = l.extrapolated.ballistic.action_kick_second / hbar;
    if (l.kick_first_finite) ballistic["kick_first_at_tau"] = *l.kick_first_finite / hbar;
    if (l.kick_second_finite) ballistic["kick_second_at_tau"] = *l.kick_second_finite / hbar;

    json j{{"qgi_version", version_string()},
           {"spec", spec_to_json(l.spec)},
           {"ballistic", ballistic},
           {"reference",
            {{"kinetic", led.reference_kinetic / hbar},
             {"gravity_potential", led.reference_gravity_potential / hbar},
             {"applied_potential", led.reference_applied_potential / hbar},
             {"total", led.reference.total_phase}}},
           {"phase_difference", led.phase_difference},
           {"omitted_terms",
            {"ballistic.kick_first", "ballistic.kick_second", "reference.applied_potential"}},
           {"phase_difference_without_omitted_terms", truncated}};

    if (c.format == Format::Json) return j.dump(2) + '\n';

    std::string out = "# qgi " + version_string() + " classical ledger, phases in rad\n";
    out += "term,phase,omitted\n";
    auto line = [&](const std::string& name, double v, bool omitted) {
        out += name + ',' + csv_number(v) + ',' + (omitted ? "yes" : "no") + '\n';
    };
    line("ballistic.free_flight", led.ballistic.action_free_flight / hbar, false);
    line("ballistic.kick_first", led.ballistic.action_kick_first / hbar, true);
    line("ballistic.kick_second", led.ballistic.action_kick_second / hbar, true);
    if (l.kick_first_finite) line("ballistic.kick_first_at_tau", *l.kick_first_finite / hbar, true);
    if (l.kick_second_finite) {
        line("ballistic.kick_second_at_tau", *l.kick_second_finite / hbar, true);
    }
    line("reference.kinetic", led.reference_kinetic / hbar, false);
    line("reference.gravity_potential", led.reference_gravity_potential / hbar, false);
    line("reference.applied_potential", led.reference_applied_potential / hbar, true);
    line("phase_difference", led.phase_difference, false);
    line("phase_difference_without_omitted_terms", truncated, false);
    return out;
}

std::string format_verify_line(const verify::CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%s] %2d  %7.3fs  ", r.passed ? "PASS" : "FAIL", r.id,
                  r.seconds);
    return std::string(buf) + r.title + ": " + r.detail;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

}  // namespace qgi::cli
