#include "qgi/classical.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qgi/errors.hpp"

namespace qgi::classical {

namespace {

constexpr unsigned kMaxDepth = 15;
constexpr double kQuadTolerance = 1e-13;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

// Boost reports the G7/K15 error estimate on the reference interval [-1, 1];
// rescale it to [t0, t1].
template <class F>
double kronrod(F& f, double t0, double t1, double* err, double* l1 = nullptr) {
    const double estimate = Kronrod::integrate(f, t0, t1, 0, 0.0, err, l1);
    *err *= 0.5 * (t1 - t0);
    return estimate;
}

template <class F>
double adaptive(F& f, double t0, double t1, double abs_tol, unsigned depth) {
    double err = 0.0;
    const double estimate = kronrod(f, t0, t1, &err);
    if (err <= abs_tol || depth == 0) return estimate;
    const double mid = 0.5 * (t0 + t1);
    return adaptive(f, t0, mid, 0.5 * abs_tol, depth - 1) +
           adaptive(f, mid, t1, 0.5 * abs_tol, depth - 1);
}

// Adaptive G7/K15 with an absolute tolerance of 1e-13 times the L1 norm of
// the integrand, so integrals that cancel to ~0 do not force deep bisection.
template <class F>
double integrate(F&& f, double t0, double t1) {
    if (t1 == t0) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    const double first = kronrod(f, t0, t1, &err, &l1);
    const double abs_tol = kQuadTolerance * l1;
    if (err <= abs_tol) return first;
    return adaptive(f, t0, t1, abs_tol, kMaxDepth);
}

}  // namespace

double trajectory_position(const Trajectory& traj, double t) {
    if (!(t >= traj.t_start && t <= traj.t_end)) {
        std::ostringstream os;
        os << "t = " << t << " outside trajectory span [" << traj.t_start << ", " << traj.t_end
           << "]";
        throw OutOfSpanError(os.str());
    }
    const double s = t - traj.t_start;
    return traj.z0 + traj.v0 * s + 0.5 * traj.accel * s * s;
}

double trajectory_velocity(const Trajectory& traj, double t) {
    if (!(t >= traj.t_start && t <= traj.t_end)) {
        throw OutOfSpanError("velocity requested outside trajectory span");
    }
    return traj.v0 + traj.accel * (t - traj.t_start);
}

double action_linear_potential(const MassPair& masses, double force, double z0, double v0,
                               double T) {
    if (!(T >= 0.0)) throw InvalidParameterError("action interval must be non-negative");
    const double m = masses.inertial;
    const double acc = force / m;
    const double T2 = T * T;
    const double T3 = T2 * T;
    const double kinetic = 0.5 * m * (v0 * v0 * T + v0 * acc * T2 + acc * acc * T3 / 3.0);
    const double potential = force * (z0 * T + 0.5 * v0 * T2 + acc * T3 / 6.0);
    return kinetic + potential;
}

double action_linear_potential_quadrature(const MassPair& masses, double force, double z0,
                                          double v0, double T) {
    if (!(T >= 0.0)) throw InvalidParameterError("action interval must be non-negative");
    const double m = masses.inertial;
    const Trajectory path{z0, v0, force / m, 0.0, T};
    auto lagrangian = [&](double t) {
        const double v = trajectory_velocity(path, t);
        return 0.5 * m * v * v + force * trajectory_position(path, t);
    };
    return integrate(lagrangian, 0.0, T);
}

double kick_action(const MassPair& masses, double g, double v_kick, double tau,
                   PhaseSpacePoint entry) {
    if (!(tau > 0.0)) throw InvalidParameterError("finite kick requires tau > 0");
    const double m = masses.inertial;
    const double acc = v_kick / tau - masses.ratio() * g;
    const double force = m * acc;
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    const double kinetic =
        0.5 * m * (entry.v * entry.v * tau + entry.v * acc * t2 + acc * acc * t3 / 3.0);
    const double potential = force * (entry.z * tau + 0.5 * entry.v * t2 + acc * t3 / 6.0);
    return kinetic + potential;
}

double kick_action_quadrature(const MassPair& masses, double g, double v_kick, double tau,
                              PhaseSpacePoint entry) {
    if (!(tau > 0.0)) throw InvalidParameterError("finite kick requires tau > 0");
    const double m = masses.inertial;
    // Gravity stays on; the kick force adds to it.
    const double force = m * v_kick / tau - masses.gravitational * g;
    const Trajectory path{entry.z, entry.v, force / m, 0.0, tau};
    auto lagrangian = [&](double t) {
        const double v = trajectory_velocity(path, t);
        return 0.5 * m * v * v + force * trajectory_position(path, t);
    };
    return integrate(lagrangian, 0.0, tau);
}

double kick_action_limit(const MassPair& masses, double v_kick, PhaseSpacePoint entry) {
    return masses.inertial * v_kick * entry.z;
}

double kick_action_extrapolated(const MassPair& masses, double g, double v_kick, double tau0,
                                PhaseSpacePoint entry, int levels) {
    if (levels < 1) throw InvalidParameterError("extrapolation needs at least one level");
    std::vector<double> taus(levels);
    std::vector<double> table(levels);
    for (int k = 0; k < levels; ++k) {
        taus[k] = tau0 / std::ldexp(1.0, k);
        table[k] = kick_action_quadrature(masses, g, v_kick, taus[k], entry);
    }
    // Neville's scheme evaluated at tau = 0.
    for (int j = 1; j < levels; ++j) {
        for (int k = levels - 1; k >= j; --k) {
            table[k] = (taus[k - j] * table[k] - taus[k] * table[k - 1]) / (taus[k - j] - taus[k]);
        }
    }
    return table[levels - 1];
}

ClassicalLedger arm_ledger(const InterferometerSpec& spec, KickModel kicks) {
    spec.validate();
    const MassPair& ms = spec.masses;
    const double m = ms.inertial;
    const double hbar = spec.forces.hbar;
    const double g = spec.forces.g;
    const double T = spec.total_time();
    const double v0 = spec.v0();
    const double gravity_force = -ms.gravitational * g;

    ClassicalLedger out;

    const Trajectory ballistic{0.0, v0, gravity_force / m, 0.0, T};
    out.ballistic_end = {trajectory_position(ballistic, T), trajectory_velocity(ballistic, T)};
    out.ballistic.action_free_flight = action_linear_potential(ms, gravity_force, 0.0, v0, T);

    const PhaseSpacePoint start{0.0, 0.0};
    if (kicks == KickModel::Instantaneous) {
        out.ballistic.action_kick_first = kick_action_limit(ms, v0, start);
        out.ballistic.action_kick_second = kick_action_limit(ms, v0, out.ballistic_end);
    } else {
        const double tau0 = spec.forces.tau > 0.0 ? spec.forces.tau : 1e-2 * T;
        out.ballistic.action_kick_first = kick_action_extrapolated(ms, g, v0, tau0, start);
        out.ballistic.action_kick_second =
            kick_action_extrapolated(ms, g, v0, tau0, out.ballistic_end);
    }
    out.ballistic.total_phase = (out.ballistic.action_free_flight +
                                 out.ballistic.action_kick_first +
                                 out.ballistic.action_kick_second) /
                                hbar;

    const double applied_force = m * spec.forces.a;
    const double net_force = applied_force + gravity_force;
    const Trajectory reference{0.0, 0.0, net_force / m, 0.0, T};
    out.reference_end = {trajectory_position(reference, T), trajectory_velocity(reference, T)};
    out.reference.action_free_flight = action_linear_potential(ms, net_force, 0.0, 0.0, T);
    out.reference.total_phase = out.reference.action_free_flight / hbar;

    // z(t) = da t^2 / 2, so the time integral of z is da T^3 / 6.
    const double da = net_force / m;
    const double z_integral = da * T * T * T / 6.0;
    out.reference_kinetic = 0.5 * m * da * da * T * T * T / 3.0;
    out.reference_gravity_potential = gravity_force * z_integral;
    out.reference_applied_potential = applied_force * z_integral;

    out.phase_difference = out.ballistic.total_phase - out.reference.total_phase;
    return out;
}

double ballistic_phase(const InterferometerSpec& spec) {
    spec.require_closed();
    return arm_ledger(spec).ballistic.total_phase;
}

double reference_phase(const InterferometerSpec& spec) {
    return arm_ledger(spec).reference.total_phase;
}

double phase_difference_classical(const InterferometerSpec& spec) {
    spec.require_closed();
    return arm_ledger(spec).phase_difference;
}

namespace {

double half_time_cubed(const InterferometerSpec& spec) {
    const double half = 0.5 * spec.total_time();
    return half * half * half;
}

}  // namespace

double ballistic_phase_closed_form(const InterferometerSpec& spec) {
    spec.require_closed();
    const double gb = spec.g_bar();
    const double a = spec.forces.a;
    return spec.masses.inertial / spec.forces.hbar *
           (8.0 / 3.0 * gb * gb - 6.0 * a * gb + 3.0 * a * a) * half_time_cubed(spec);
}

double reference_phase_closed_form(const InterferometerSpec& spec) {
    spec.validate();
    const double m = spec.masses.inertial;
    const double weight = spec.masses.gravitational * spec.forces.g;
    const double f_mag = m * spec.forces.a;
    return half_time_cubed(spec) / spec.forces.hbar *
           (8.0 * weight * weight / (3.0 * m) - 16.0 * weight * f_mag / (3.0 * m) +
            8.0 * f_mag * f_mag / (3.0 * m));
}

double phase_difference_closed_form(const InterferometerSpec& spec) {
    spec.require_closed();
    const double a = spec.forces.a;
    return spec.masses.inertial * a * half_time_cubed(spec) / (3.0 * spec.forces.hbar) *
           (a - 2.0 * spec.g_bar());
}

double phase_difference_residual_form(const InterferometerSpec& spec) {
    spec.require_closed();
    const double m = spec.masses.inertial;
    const double weight = spec.masses.gravitational * spec.forces.g;
    const double da = spec.delta_a();
    return -half_time_cubed(spec) / (3.0 * spec.forces.hbar) *
           (weight * weight / m - m * da * da);
}

}  // namespace qgi::classical
