#pragma once

// Classical trajectories under constant forces and the per-arm action ledger.
//
// Every action here is the Lagrangian integral of m_i z'^2/2 - V(z) along the
// classical path with V(z) = -F z. Each one is available in closed form and
// by adaptive Gauss-Kronrod quadrature; the quadrature routes are the test
// oracles and never feed the closed forms.

#include "qgi/model.hpp"

namespace qgi::classical {

/// Constant-acceleration motion. `accel` is signed (force / m_i, z up).
struct Trajectory {
    double z0 = 0.0;
    double v0 = 0.0;
    double accel = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
};

/// Throws OutOfSpanError outside [t_start, t_end].
double trajectory_position(const Trajectory& traj, double t);
double trajectory_velocity(const Trajectory& traj, double t);

/// Closed form of the action on [0, T] for a particle starting at (z0, v0)
/// under the constant force `force`.
double action_linear_potential(const MassPair& masses, double force, double z0, double v0,
                               double T);
double action_linear_potential_quadrature(const MassPair& masses, double force, double z0,
                                          double v0, double T);

struct PhaseSpacePoint {
    double z = 0.0;
    double v = 0.0;
};

/// Action accumulated during one kick of duration tau that adds `v_kick` to
/// the velocity, with gravity (-m_g g) left on. Exact closed form for finite
/// tau.
double kick_action(const MassPair& masses, double g, double v_kick, double tau,
                   PhaseSpacePoint entry);
double kick_action_quadrature(const MassPair& masses, double g, double v_kick, double tau,
                              PhaseSpacePoint entry);

/// tau -> 0 limit: m_i v_kick z_entry.
double kick_action_limit(const MassPair& masses, double v_kick, PhaseSpacePoint entry);

/// Richardson (Neville) extrapolation to tau = 0 of the quadrature action at
/// tau0, tau0/2, ..., tau0/2^(levels-1).
double kick_action_extrapolated(const MassPair& masses, double g, double v_kick, double tau0,
                                PhaseSpacePoint entry, int levels = 4);

struct ArmLedger {
    double action_free_flight = 0.0;
    double action_kick_first = 0.0;
    double action_kick_second = 0.0;
    double total_phase = 0.0;  ///< sum of the actions over hbar
};

enum class KickModel {
    Instantaneous,        ///< closed-form tau -> 0 limit
    FiniteExtrapolated,   ///< finite-tau quadrature, extrapolated to tau -> 0
};

/// Full per-term breakdown of both arms.
struct ClassicalLedger {
    ArmLedger ballistic;
    ArmLedger reference;
    // Reference action split by Lagrangian term.
    double reference_kinetic = 0.0;
    double reference_gravity_potential = 0.0;
    double reference_applied_potential = 0.0;
    PhaseSpacePoint ballistic_end;  ///< state entering the second kick
    PhaseSpacePoint reference_end;
    double phase_difference = 0.0;  ///< ballistic - reference, radians
};

/// Evaluates the ledger for the spec's p0 and total time. Does not require
/// closure; the phase difference is only an interferometer phase when closed.
ClassicalLedger arm_ledger(const InterferometerSpec& spec,
                           KickModel kicks = KickModel::Instantaneous);

/// (S_free + S_kick1 + S_kick2) / hbar. Requires a closed spec.
double ballistic_phase(const InterferometerSpec& spec);
double reference_phase(const InterferometerSpec& spec);
/// ballistic_phase - reference_phase. Requires a closed spec.
double phase_difference_classical(const InterferometerSpec& spec);

// Closed forms of the same quantities written with the half time T (so the
// sequence lasts 2T, whatever the spec's convention).
double ballistic_phase_closed_form(const InterferometerSpec& spec);
double reference_phase_closed_form(const InterferometerSpec& spec);
/// (m_i a T^3 / 3 hbar)(a - 2 g_bar)
double phase_difference_closed_form(const InterferometerSpec& spec);
/// -(T^3 / 3 hbar)(m_g^2 g^2 / m_i - m_i delta_a^2)
double phase_difference_residual_form(const InterferometerSpec& spec);

}  // namespace qgi::classical
