#pragma once

// Closed-form quantum results for the two-arm sequence: linear-potential
// propagators, Kennard phases, the interference term and the exit-port
// probability. Phases are returned unwrapped; wrapping only happens when a
// complex value is formed.

#include <complex>

#include "qgi/model.hpp"

namespace qgi::analytic {

using Complex = std::complex<double>;

/// -(1/24) mass accel^2 T^3 / hbar.
double kennard_phase(double mass, double accel, double T, double hbar);

struct KennardPhases {
    double phi_g = 0.0;        ///< ballistic arm, accel = (m_g/m_i) g
    double phi_delta_a = 0.0;  ///< reference arm, accel = delta_a
};

/// Both Kennard phases over the spec's total time.
KennardPhases kennard_phases(const InterferometerSpec& spec);

enum class Direction {
    Forward,   ///< <z_to| exp(-i H T / hbar) |z_from>
    Backward,  ///< <z_to| exp(+i H T / hbar) |z_from>
};

/// Kernel of H = p^2/2m - m accel z. `accel` is the signed acceleration the
/// force produces (negative for gravity with z up).
struct PropagatorKernel {
    double mass = 1.0;
    double accel = 0.0;
    double T = 1.0;
    double hbar = 1.0;
    Direction direction = Direction::Forward;
};

/// N = sqrt(m / (2 pi i hbar T)) for the forward kernel, its conjugate backward.
Complex propagator_normalization(const PropagatorKernel& kernel);

/// Throws ZeroTimeError when T == 0.
Complex propagator_value(const PropagatorKernel& kernel, double z_from, double z_to);

/// phi_g - phi_delta_a, the argument of the interference term. Requires a
/// closed spec.
double interference_phase(const InterferometerSpec& spec);

/// The same phase re-parametrised by the applied acceleration:
/// (1 - 2 (m_g/m_i)(g/a)) m_i a^2 T^3 / (24 hbar).
double interference_phase_g_form(const InterferometerSpec& spec);

Complex interference_term(const InterferometerSpec& spec);
Complex interference_term_g_form(const InterferometerSpec& spec);

/// P = (2 + I + I*) / 4. Throws DomainError when |I| > 1 + 1e-9.
double exit_probability(Complex I);

}  // namespace qgi::analytic
