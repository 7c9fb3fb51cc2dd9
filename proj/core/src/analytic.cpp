#include "qgi/analytic.hpp"

#include <cmath>
#include <numbers>

#include "qgi/errors.hpp"

namespace qgi::analytic {

double kennard_phase(double mass, double accel, double T, double hbar) {
    if (!(T >= 0.0)) throw InvalidParameterError("Kennard phase needs T >= 0");
    return -mass * accel * accel * T * T * T / (24.0 * hbar);
}

KennardPhases kennard_phases(const InterferometerSpec& spec) {
    spec.validate();
    const double m = spec.masses.inertial;
    const double T = spec.total_time();
    const double hbar = spec.forces.hbar;
    return {kennard_phase(m, spec.g_bar(), T, hbar), kennard_phase(m, spec.delta_a(), T, hbar)};
}

Complex propagator_normalization(const PropagatorKernel& k) {
    if (k.T == 0.0) throw ZeroTimeError("propagator at T = 0 is a delta distribution");
    const double magnitude = std::sqrt(k.mass / (2.0 * std::numbers::pi * k.hbar * std::abs(k.T)));
    // 1/sqrt(i) = exp(-i pi/4)
    const double arg = k.direction == Direction::Forward ? -0.25 * std::numbers::pi
                                                         : 0.25 * std::numbers::pi;
    return std::polar(magnitude, arg);
}

Complex propagator_value(const PropagatorKernel& k, double z_from, double z_to) {
    const Complex norm = propagator_normalization(k);
    const double T = std::abs(k.T);
    const double dz = z_to - z_from;
    double phase = k.mass * dz * dz / (2.0 * k.hbar * T) +
                   k.mass * k.accel * (z_to + z_from) * T / (2.0 * k.hbar) +
                   kennard_phase(k.mass, k.accel, T, k.hbar);
    // The forward kernel is symmetric in its arguments, so the adjoint kernel
    // is its complex conjugate.
    if (k.direction == Direction::Backward) phase = -phase;
    return norm * std::polar(1.0, phase);
}

double interference_phase(const InterferometerSpec& spec) {
    spec.require_closed();
    const KennardPhases k = kennard_phases(spec);
    return k.phi_g - k.phi_delta_a;
}

double interference_phase_g_form(const InterferometerSpec& spec) {
    spec.require_closed();
    const double a = spec.forces.a;
    const double m = spec.masses.inertial;
    const double T = spec.total_time();
    const double T3 = T * T * T;
    if (a == 0.0) {
        // (1 - 2 g_bar / a) a^2 = a^2 - 2 a g_bar -> 0
        return 0.0;
    }
    const double prefactor = 1.0 - 2.0 * spec.masses.ratio() * (spec.forces.g / a);
    return prefactor * m * a * a * T3 / (24.0 * spec.forces.hbar);
}

Complex interference_term(const InterferometerSpec& spec) {
    return std::polar(1.0, interference_phase(spec));
}

Complex interference_term_g_form(const InterferometerSpec& spec) {
    return std::polar(1.0, interference_phase_g_form(spec));
}

double exit_probability(Complex I) {
    if (!(std::abs(I) <= 1.0 + 1e-9)) {
        throw DomainError("|I| exceeds 1; not a valid interference term");
    }
    return (2.0 + I.real() + std::conj(I).real()) / 4.0;
}

}  // namespace qgi::analytic
