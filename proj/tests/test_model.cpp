#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgi/errors.hpp"
#include "qgi/model.hpp"

using namespace qgi;

TEST_CASE("residual acceleration examples") {
    CHECK(residual_acceleration({1, 1}, 9.8, 9.8) == 0.0);
    CHECK(residual_acceleration({1, 1}, 1, 1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(residual_acceleration({2, 1}, 4, 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closing time examples") {
    CHECK(solve_closing_time({1, 1}, 1, 0, 1) == 2.0);
    CHECK(solve_closing_time({1, 1}, 1, 1, 1) == 1.0);
    CHECK_THROWS_AS(solve_closing_time({1, 1}, 0, 0, 1), NonClosableError);
    CHECK_THROWS_AS(solve_closing_time({1, 1}, 1, -2, 1), NonClosableError);
    CHECK_THROWS_AS(solve_closing_time({1, 1}, 1, 0, 0), InvalidParameterError);
}

TEST_CASE("closing velocity examples") {
    CHECK(solve_closing_velocity({1, 1}, 1, 0, 2) == 1.0);
    CHECK(solve_closing_velocity({1, 1}, 1, 1, 1) == 1.0);
    CHECK(solve_closing_velocity({3, 0.7}, 0, 0, 5) == 0.0);
    CHECK_THROWS_AS(solve_closing_velocity({1, 1}, 1, 0, 0), InvalidParameterError);
}

TEST_CASE("levitation acceleration examples") {
    CHECK(levitation_acceleration({1, 1}, 9.8) == 9.8);
    CHECK(levitation_acceleration({2, 1}, 9.8) == 4.9);
    CHECK(levitation_acceleration({1, 1}, 0) == 0.0);
    CHECK_THROWS_AS(levitation_acceleration({0, 1}, 1), InvalidParameterError);
    CHECK_THROWS_AS(levitation_acceleration({1, -1}, 1), InvalidParameterError);
}

TEST_CASE("closing time matches the trajectory intersection") {
    // The ballistic arm z = v0 t - g t^2/2 meets the reference z = da t^2/2
    // at t = 2 v0 / (g + da); bisect for it independently.
    for (const double da : {0.0, 1.0, 0.3}) {
        const double g = 1.0;
        const double v0 = 1.0;
        auto gap = [&](double t) { return v0 * t - 0.5 * g * t * t - 0.5 * da * t * t; };
        double lo = 1e-3, hi = 100.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) > 0 ? lo : hi) = mid;
        }
        CHECK(solve_closing_time({1, 1}, g, da, 1.0) == doctest::Approx(lo).epsilon(1e-12));
    }
}

TEST_CASE("property: solver identities") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const MassPair m{u(rng), u(rng)};
        const double g = u(rng);
        CHECK(residual_acceleration(m, g, levitation_acceleration(m, g)) == 0.0);

        const double da = u(rng) - 1.0;
        const double p0 = u(rng);
        if (m.inertial * da + m.gravitational * g <= 0) continue;
        const double T = solve_closing_time(m, g, da, p0);
        CHECK(solve_closing_velocity(m, g, da, T) ==
              doctest::Approx(p0 / m.inertial).epsilon(1e-12));
        const double lambda = u(rng);
        CHECK(solve_closing_time(m, g, da, lambda * p0) ==
              doctest::Approx(lambda * T).epsilon(1e-12));
    }
}

TEST_CASE("spec construction and conventions") {
    const auto half = closed_spec_for_momentum({1, 1}, 1, 1, 1);
    CHECK(half.duration == 2.0);
    CHECK(half.total_time() == 2.0);
    CHECK(half.closed);

    const auto full = closed_spec_for_momentum({1, 1}, 1, 1, 1, TimeConvention::FullT);
    CHECK(full.duration == 1.0);
    CHECK(full.total_time() == 2.0);

    const auto by_time = closed_spec_for_duration({1, 1}, 1, 1.5, 1.0);
    CHECK(by_time.forces.p0 == doctest::Approx(0.75));
    CHECK(by_time.satisfies_closing());

    InterferometerSpec broken = half;
    broken.duration *= 1.1;
    CHECK_FALSE(broken.satisfies_closing());
    CHECK_THROWS_AS(broken.validate(), InvalidParameterError);
    broken.closed = false;
    CHECK_NOTHROW(broken.validate());
    CHECK_THROWS_AS(broken.require_closed(), ClosureRequiredError);

    InterferometerSpec bad = half;
    bad.forces.hbar = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameterError);
    bad = half;
    bad.forces.g = -1;
    CHECK_THROWS_AS(bad.validate(), InvalidParameterError);
    bad = half;
    bad.duration = std::nan("");
    CHECK_THROWS_AS(bad.validate(), InvalidParameterError);
}

TEST_CASE("time convention parsing") {
    CHECK(parse_time_convention("half") == TimeConvention::HalfT);
    CHECK(parse_time_convention("full") == TimeConvention::FullT);
    CHECK(to_string(TimeConvention::FullT) == "full");
    CHECK_THROWS_AS(parse_time_convention("quarter"), InvalidParameterError);
}

TEST_CASE("wrap_phase range") {
    constexpr double pi = std::numbers::pi;
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(pi) == pi);
    CHECK(wrap_phase(-pi) == pi);
    CHECK(wrap_phase(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_phase(-1.0 / 3.0 + 8 * pi) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("pairwise difference is taken modulo 2 pi") {
    PhaseReport r;
    r.phi_analytic = -1.0 / 3.0;
    r.update_pairwise_diff();
    CHECK(r.max_pairwise_diff == 0.0);
    r.phi_numeric = -1.0 / 3.0 + 2 * std::numbers::pi + 1e-7;
    r.phi_classical = -1.0 / 3.0 - 3e-7;
    r.update_pairwise_diff();
    CHECK(r.max_pairwise_diff == doctest::Approx(4e-7).epsilon(1e-6));
}

TEST_CASE("error names") {
    const NonClosableError e("x");
    CHECK(e.name() == "NonClosableError");
    const BoundaryEscapeError b(1.5, "y");
    CHECK(b.time() == 1.5);
    CHECK(b.name() == "BoundaryEscapeError");
}
