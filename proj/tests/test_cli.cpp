#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "cli/config.hpp"
#include "cli/report_io.hpp"
#include "cli/runner.hpp"
#include "qgi/errors.hpp"

using namespace qgi;
using namespace qgi::cli;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const std::optional<double>& a, const std::optional<double>& b) {
    return a.has_value() == b.has_value() && (!a || same_bits(*a, *b));
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("settings text parsing") {
    const auto s = parse_settings_text("# comment\nmi = 2\n\ndelta_a=0.5  # trailing\n T = 3 \n");
    CHECK(s.at("mi") == "2");
    CHECK(s.at("delta-a") == "0.5");
    CHECK(s.at("T") == "3");
    CHECK_THROWS_AS(parse_settings_text("just words\n"), ConfigError);
    CHECK_THROWS_AS(run_config_from_settings({{"nonsense", "1"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_settings({{"mi", "abc"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_settings({{"grid-points", "1000"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_settings({{"format", "xml"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_settings({{"axis", "g"}}), ConfigError);
}

TEST_CASE("engine lists") {
    CHECK(parse_engines("analytic").to_string() == "analytic");
    CHECK(parse_engines("numeric, classical").to_string() == "classical,numeric");
    CHECK(parse_engines("all").to_string() == "classical,analytic,numeric");
    CHECK_THROWS_AS(parse_engines("quantum"), ConfigError);
    CHECK_THROWS_AS(parse_engines(""), ConfigError);
}

TEST_CASE("build_spec closing rules") {
    RunConfig c;
    CHECK_THROWS_AS(build_spec(c), ConfigError);
    c.p0 = 1.0;
    const auto s = build_spec(c);
    CHECK(s.duration == 2.0);
    CHECK(s.forces.a == 1.0);
    c.duration = 2.0;
    CHECK_THROWS_AS(build_spec(c), ConfigError);
    c.closing = false;
    CHECK(build_spec(c).closed);
    c.duration = 2.2;
    CHECK_FALSE(build_spec(c).closed);
    c.p0.reset();
    CHECK_THROWS_AS(build_spec(c), ConfigError);

    RunConfig both;
    both.p0 = 1.0;
    both.a = 1.0;
    both.delta_a = 0.0;
    CHECK_THROWS_AS(build_spec(both), ConfigError);

    RunConfig drift;
    drift.g = 0.0;
    drift.p0 = 1.0;
    CHECK_THROWS_AS(build_spec(drift), NonClosableError);
}

TEST_CASE("sweep config") {
    const auto v = make_axis_values(0.1, 1.0, 5, true);
    CHECK(v.size() == 5);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == doctest::Approx(std::sqrt(0.1)));
    CHECK_THROWS_AS(make_axis_values(0, 1, 5, true), ConfigError);
    CHECK_THROWS_AS(make_axis_values(0, 1, 1, false), ConfigError);

    SweepConfig s;
    s.values = {1, 2, 2};
    CHECK_THROWS_AS(validate_sweep(s), ConfigError);
    s.values = {3, 2, 1};
    CHECK_NOTHROW(validate_sweep(s));

    const auto parsed = sweep_config_from_settings(
        {{"axis", "delta_a"}, {"start", "-1"}, {"stop", "1"}, {"count", "3"}, {"T", "1"}});
    CHECK(parsed.axis == SweepAxis::DeltaA);
    CHECK(parsed.values == std::vector<double>{-1, 0, 1});
    CHECK_THROWS_AS(sweep_config_from_settings({{"axis", "g"}, {"values", "1,2"}, {"count", "2"}}),
                    ConfigError);
    CHECK_THROWS_AS(sweep_config_from_settings({{"axis", "mass"}, {"values", "1,2"}}),
                    ConfigError);
}

TEST_CASE("run: levitated case") {
    RunConfig c;
    c.p0 = 1.0;
    const auto out = run(c);
    CHECK(out.exit_code == kPass);
    const auto& r = out.report;
    REQUIRE(r.phi_analytic);
    REQUIRE(r.phi_numeric);
    REQUIRE(r.phi_classical);
    CHECK(*r.phi_analytic == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(r.probability == doctest::Approx((1 + std::cos(1.0 / 3.0)) / 2).epsilon(1e-14));
    CHECK(r.probability == doctest::Approx(0.97247).epsilon(1e-5));
    CHECK(r.max_pairwise_diff < 1e-6);
    CHECK(r.errors.empty());
}

TEST_CASE("run: single engine and tolerance") {
    RunConfig c;
    c.p0 = 1.0;
    c.engines = parse_engines("analytic");
    const auto out = run(c);
    CHECK(out.exit_code == kPass);
    CHECK_FALSE(out.report.phi_numeric);
    CHECK_FALSE(out.report.phi_classical);

    RunConfig strict;
    strict.p0 = 1.0;
    strict.engines = parse_engines("analytic,numeric");
    strict.resolution.n_steps = 64;
    strict.tolerance = 1e-9;
    CHECK(run(strict).exit_code == kVerifyFailure);
}

TEST_CASE("run: broken closure warns") {
    RunConfig c;
    c.closing = false;
    c.p0 = 1.0;
    c.duration = 2.2;
    const auto out = run(c);
    REQUIRE(out.report.abs_I_numeric);
    CHECK(*out.report.abs_I_numeric < 0.999);
    bool warned = false;
    for (const auto& w : out.report.warnings) {
        warned = warned || w.rfind("ClosureViolationWarning", 0) == 0;
    }
    CHECK(warned);
    CHECK_FALSE(out.report.phi_analytic);
}

TEST_CASE("run: engine errors carry the error name") {
    RunConfig c;
    c.p0 = 1.0;
    c.engines = parse_engines("numeric");
    c.resolution.n_points = 256;
    c.width = 0.02;
    const auto out = run(c);
    CHECK(out.exit_code == kEngineError);
    REQUIRE(out.report.errors.size() == 1);
    CHECK(out.report.errors[0].engine == "numeric");
    CHECK(out.report.errors[0].error == "GridTooCoarseError");
}

TEST_CASE("sweep over T has a cubic law") {
    SweepConfig s;
    s.base.engines = parse_engines("analytic,classical");
    s.base.duration = 1.0;
    s.axis = SweepAxis::T;
    s.values = make_axis_values(0.5, 5.0, 7, true);
    const auto out = sweep(s);
    CHECK(out.exit_code == kPass);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : out.rows) {
        const double x = std::log(row.axis_value);
        const double y = std::log(std::abs(*row.outcome.report.phi_analytic));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(out.rows.size());
    CHECK(std::abs((n * sxy - sx * sy) / (n * sxx - sx * sx) - 3.0) < 1e-6);
}

TEST_CASE("sweep over g at fixed a has slope -1/12") {
    SweepConfig s;
    s.base.engines = parse_engines("analytic");
    s.base.a = 1.0;
    s.base.duration = 1.0;
    s.base.format = Format::Csv;
    s.axis = SweepAxis::G;
    s.values = {0.9, 1.0, 1.1};
    const auto rows = csv_rows(format_sweep(s, sweep(s)));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "axis_value");
    const double slope = (std::stod(rows[3][2]) - std::stod(rows[1][2])) / 0.2;
    CHECK(slope == doctest::Approx(-1.0 / 12.0).epsilon(1e-8));
}

TEST_CASE("sweep over delta_a is even") {
    SweepConfig s;
    s.base.engines = parse_engines("analytic,classical");
    s.base.duration = 1.0;
    s.axis = SweepAxis::DeltaA;
    s.values = {-0.6, -0.3, 0.0, 0.3, 0.6};
    s.threads = 3;
    const auto out = sweep(s);
    REQUIRE(out.rows.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(out.rows[i].axis_value == s.values[i]);
    CHECK(*out.rows[0].outcome.report.phi_analytic ==
          doctest::Approx(*out.rows[4].outcome.report.phi_analytic).epsilon(1e-14));
    CHECK(*out.rows[1].outcome.report.phi_analytic ==
          doctest::Approx(*out.rows[3].outcome.report.phi_analytic).epsilon(1e-14));
}

TEST_CASE("sweep rows with engine errors") {
    SweepConfig s;
    s.base.engines = parse_engines("analytic");
    s.base.p0 = 1.0;
    s.axis = SweepAxis::G;
    s.base.delta_a = 0.0;
    s.values = {1.0, 0.0};
    const auto out = sweep(s);
    CHECK(out.exit_code == kEngineError);
    CHECK(out.rows[0].outcome.report.errors.empty());
    CHECK(out.rows[1].outcome.report.errors.size() == 1);
    const auto rows = csv_rows([&] {
        SweepConfig csv = s;
        csv.base.format = Format::Csv;
        return format_sweep(csv, out);
    }());
    CHECK(rows[1].back() == "");
    CHECK(rows[2].back() == "model:NonClosableError");
}

TEST_CASE("report JSON round trip is bit exact") {
    PhaseReport r;
    r.phi_classical = -1.0 / 3.0;
    r.phi_analytic = std::nextafter(-1.0 / 3.0, 0.0);
    r.phi_numeric = 0.1 + 0.2;
    r.abs_I_numeric = 1.0 - 1e-13;
    r.probability = std::numeric_limits<double>::denorm_min();
    r.max_pairwise_diff = 5e-300;
    r.warnings = {"ClosureViolationWarning: |I| = 0.9"};
    r.errors = {{"numeric", "GridTooCoarseError", "quote \" and newline \n"}};

    const auto back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
    CHECK(same_bits(back.phi_classical, r.phi_classical));
    CHECK(same_bits(back.phi_analytic, r.phi_analytic));
    CHECK(same_bits(back.phi_numeric, r.phi_numeric));
    CHECK(same_bits(back.abs_I_numeric, r.abs_I_numeric));
    CHECK(same_bits(back.probability, r.probability));
    CHECK(same_bits(back.max_pairwise_diff, r.max_pairwise_diff));
    CHECK(back == r);

    PhaseReport sparse;
    sparse.phi_analytic = 0.25;
    const auto j = report_to_json(sparse);
    CHECK_FALSE(j.contains("phi_numeric"));
    CHECK(report_from_json(j) == sparse);
}

TEST_CASE("output is deterministic") {
    RunConfig c;
    c.p0 = 1.0;
    c.resolution.n_points = 2048;
    c.resolution.n_steps = 256;
    CHECK(format_phase(c, run(c)) == format_phase(c, run(c)));

    SweepConfig s;
    s.base = c;
    s.base.format = Format::Csv;
    s.axis = SweepAxis::P0;
    s.values = {0.8, 1.0, 1.2};
    s.threads = 2;
    const auto first = format_sweep(s, sweep(s));
    s.threads = 1;
    CHECK(format_sweep(s, sweep(s)) == first);
    CHECK(first.rfind("# qgi ", 0) == 0);
}

TEST_CASE("classical ledger lists the omitted terms") {
    RunConfig c;
    c.a = 1.5;
    c.duration = 2.0;
    c.tau = 1e-3;
    const auto led = classical_ledger(c);
    const auto j = nlohmann::json::parse(format_ledger(c, led));
    CHECK(j.at("omitted_terms").size() == 3);
    CHECK(j.at("phase_difference").get<double>() == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(j.at("ballistic").contains("kick_second_at_tau"));
    const double kick = j.at("ballistic").at("kick_second").get<double>();
    CHECK(kick != 0.0);
    CHECK(j.at("ballistic").at("kick_second_extrapolated").get<double>() ==
          doctest::Approx(kick).epsilon(1e-9));
    CHECK(std::abs(j.at("phase_difference_without_omitted_terms").get<double>() - (-0.25)) > 0.1);
}
