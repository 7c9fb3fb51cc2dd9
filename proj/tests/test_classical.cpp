#include <doctest.h>

#include <cmath>
#include <random>

#include "qgi/analytic.hpp"
#include "qgi/classical.hpp"
#include "qgi/errors.hpp"

using namespace qgi;
using namespace qgi::classical;

namespace {

InterferometerSpec full_spec(double g, double a, double T, MassPair m = {1, 1}) {
    return closed_spec_for_duration(m, g, a, T, TimeConvention::FullT);
}

}  // namespace

TEST_CASE("trajectory examples") {
    CHECK(trajectory_position({0, 0, 1, 0, 10}, 2) == 2.0);
    CHECK(trajectory_position({0, 1, -1, 0, 10}, 2) == 0.0);
    CHECK(trajectory_position({0, 0, 0, 0, 10}, 7) == 0.0);
    CHECK(trajectory_velocity({0, 1, -1, 0, 10}, 2) == -1.0);
    CHECK_THROWS_AS(trajectory_position({0, 0, 1, 0, 1}, 2), OutOfSpanError);
    CHECK_THROWS_AS(trajectory_velocity({0, 0, 1, 1, 2}, 0.5), OutOfSpanError);
}

TEST_CASE("free-flight action examples") {
    const MassPair m{1, 1};
    CHECK(action_linear_potential(m, -1, 0, 1, 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(action_linear_potential_quadrature(m, -1, 0, 1, 2) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(action_linear_potential(m, 0, 0, 0, 3.7) == 0.0);
    CHECK(action_linear_potential(m, 0, 0, 1, 1) == 0.5);
    CHECK_THROWS_AS(action_linear_potential(m, 0, 0, 1, -1), InvalidParameterError);
}

TEST_CASE("first kick action vanishes as tau shrinks") {
    const MassPair m{1, 1};
    double previous = INFINITY;
    for (const double tau : {1e-2, 1e-3, 1e-4}) {
        const double s = kick_action(m, 1.0, 1.0, tau, {0, 0});
        CHECK(std::abs(s) < previous);
        CHECK(std::abs(s) <= 1.0 * tau);
        CHECK(kick_action_quadrature(m, 1.0, 1.0, tau, {0, 0}) ==
              doctest::Approx(s).epsilon(1e-10));
        previous = std::abs(s);
    }
    CHECK(kick_action_limit(m, 1.0, {0, 0}) == 0.0);
    CHECK(std::abs(kick_action_extrapolated(m, 1.0, 1.0, 1e-2, {0, 0})) < 1e-12);
}

TEST_CASE("second kick phase") {
    const MassPair m{1, 1};
    // v0 = 2, g = 1, half time 1: the packet arrives at z = 2T (v0 - g T) with v = v0 - 2 g T.
    const PhaseSpacePoint entry{2.0 * (2.0 - 1.0), 0.0};
    CHECK(kick_action_limit(m, 2.0, entry) == 4.0);
    CHECK(kick_action_extrapolated(m, 1.0, 2.0, 1e-2, entry) ==
          doctest::Approx(4.0).epsilon(1e-10));

    // v0 = g T: the packet is back at z = 0 when the second pulse fires.
    const PhaseSpacePoint back{0.0, -1.0};
    CHECK(kick_action_extrapolated(m, 1.0, 1.0, 1e-2, back) == doctest::Approx(0.0));
}

TEST_CASE("kick action converges to the limit at least linearly") {
    const MassPair m{1.3, 0.8};
    const PhaseSpacePoint entry{0.7, -0.4};
    const double limit = kick_action_limit(m, 1.5, entry);
    double err_prev = 0;
    for (const double tau : {1e-2, 1e-3, 1e-4}) {
        const double err = std::abs(kick_action(m, 2.0, 1.5, tau, entry) - limit);
        if (err_prev > 0) CHECK(err <= 0.2 * err_prev);
        err_prev = err;
    }
}

TEST_CASE("ballistic phase examples") {
    CHECK(ballistic_phase(full_spec(1, 1, 1)) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(ballistic_phase_closed_form(full_spec(1, 1, 1)) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(ballistic_phase(full_spec(0, 0, 1)) == 0.0);
    CHECK(ballistic_phase(full_spec(0, 1, 1)) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("reference phase examples") {
    CHECK(reference_phase(full_spec(1, 1, 1)) == doctest::Approx(0.0));
    CHECK(reference_phase_closed_form(full_spec(1, 1, 1)) == doctest::Approx(0.0));
    CHECK(reference_phase(full_spec(0, 0, 1)) == 0.0);
    CHECK(reference_phase(full_spec(1, 0, 1)) == doctest::Approx(8.0 / 3.0).epsilon(1e-13));
    CHECK(reference_phase_closed_form(full_spec(1, 0, 1)) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("phase difference examples") {
    CHECK(phase_difference_classical(full_spec(1, 1, 1)) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(phase_difference_classical(full_spec(1, 0, 1)) == doctest::Approx(0.0));
    const auto s = full_spec(1, 1.5, 1);
    CHECK(phase_difference_classical(s) == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(phase_difference_closed_form(s) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(phase_difference_residual_form(s) == doctest::Approx(-0.25).epsilon(1e-14));

    InterferometerSpec open = s;
    open.duration = 1.3;
    open.closed = false;
    CHECK_THROWS_AS(phase_difference_classical(open), ClosureRequiredError);
    CHECK_THROWS_AS(ballistic_phase(open), ClosureRequiredError);
    CHECK_NOTHROW(reference_phase(open));
}

TEST_CASE("property: closed forms agree with quadrature") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.2, 2.5);
    for (int i = 0; i < 1000; ++i) {
        const MassPair m{u(rng), u(rng)};
        const double force = u(rng) - 1.2;
        const double z0 = u(rng) - 1.0;
        const double v0 = u(rng) - 1.0;
        const double T = u(rng);
        const double closed = action_linear_potential(m, force, z0, v0, T);
        const double quad = action_linear_potential_quadrature(m, force, z0, v0, T);
        const double scale = std::max(std::abs(closed), m.inertial * (v0 * v0 + 1.0) * T * 1e-3);
        CHECK(std::abs(closed - quad) <= 1e-10 * scale);

        const double tau = 1e-3 * u(rng);
        const double g = u(rng);
        const PhaseSpacePoint entry{z0, v0};
        const double kc = kick_action(m, g, v0 + 1.0, tau, entry);
        const double kq = kick_action_quadrature(m, g, v0 + 1.0, tau, entry);
        CHECK(std::abs(kc - kq) <= 1e-10 * std::max(std::abs(kc), 1e-12));
    }
}

TEST_CASE("property: ledger sums to the closed forms and the convention bridge") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    for (int i = 0; i < 500; ++i) {
        const MassPair m{u(rng), u(rng)};
        const double g = u(rng);
        const double a = u(rng);
        const double T = u(rng);
        const auto s = full_spec(g, a, T, m);
        const double dphi = phase_difference_classical(s);
        const double scale = std::max(1.0, std::abs(dphi));
        CHECK(std::abs(dphi - phase_difference_closed_form(s)) <= 1e-12 * scale);
        CHECK(std::abs(dphi - phase_difference_residual_form(s)) <= 1e-12 * scale);

        const auto led = arm_ledger(s, KickModel::FiniteExtrapolated);
        CHECK(std::abs(led.phase_difference - dphi) <= 1e-9 * scale);

        const auto half = closed_spec_for_duration(m, g, a, 2.0 * T);
        CHECK(std::abs(dphi - analytic::interference_phase(half)) <= 1e-12 * scale);
    }
}

TEST_CASE("property: T cubed scaling and g sensitivity") {
    const MassPair m{1.2, 0.9};
    const double g = 0.8, a = 1.3;
    std::vector<double> x, y;
    for (double T = 0.01; T <= 10.0 + 1e-9; T *= std::sqrt(10.0)) {
        x.push_back(std::log(T));
        y.push_back(std::log(std::abs(phase_difference_classical(full_spec(g, a, T, m)))));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    CHECK(std::abs((n * sxy - sx * sy) / (n * sxx - sx * sx) - 3.0) < 1e-9);

    const double T = 1.1, eps = 1e-4;
    const double fd = (phase_difference_classical(full_spec(g + eps, a, T, m)) -
                       phase_difference_classical(full_spec(g - eps, a, T, m))) /
                      (2 * eps);
    const double exact = 2 * m.gravitational * a * T * T * T / 3.0;
    CHECK(std::abs(std::abs(fd) - exact) <= 1e-8 * exact);
    CHECK(fd < 0);
}

TEST_CASE("ledger term split") {
    const auto s = full_spec(1, 1.5, 1);
    const auto led = arm_ledger(s);
    CHECK(led.reference_kinetic + led.reference_gravity_potential +
              led.reference_applied_potential ==
          doctest::Approx(led.reference.action_free_flight).epsilon(1e-14));
    CHECK(led.ballistic_end.z == doctest::Approx(led.reference_end.z).epsilon(1e-14));
    CHECK(led.ballistic_end.z == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(led.ballistic.action_kick_first == 0.0);
}
