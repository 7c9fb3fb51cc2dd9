#pragma once

// Domain types shared by the classical, analytic and numeric engines, plus
// the levitation and closing-condition solvers.
//
// Conventions: z points up; gravity exerts -m_g*g on the ballistic arm; the
// reference arm feels the applied force m_i*a on top of gravity, so its net
// (residual) acceleration is delta_a = a - (m_g/m_i) g. The formulas are
// unit-agnostic; tests run with hbar = m_i = 1.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgi {

struct MassPair {
    double inertial = 1.0;       ///< m_i
    double gravitational = 1.0;  ///< m_g

    double ratio() const noexcept { return gravitational / inertial; }
    void validate() const;
};

struct ArmForces {
    double g = 0.0;     ///< gravitational acceleration magnitude (>= 0)
    double a = 0.0;     ///< applied acceleration on the reference arm
    double p0 = 0.0;    ///< catapult momentum per kick
    double tau = 0.0;   ///< kick duration; 0 means instantaneous
    double hbar = 1.0;

    void validate() const;
};

/// HalfT: `duration` is the whole sequence time T (Kennard prefactor 1/24).
/// FullT: `duration` is the half time T of a 2T sequence (prefactor 1/3).
enum class TimeConvention { HalfT, FullT };

std::string_view to_string(TimeConvention c) noexcept;
TimeConvention parse_time_convention(std::string_view s);

struct InterferometerSpec {
    MassPair masses;
    ArmForces forces;
    double duration = 1.0;
    TimeConvention convention = TimeConvention::HalfT;
    bool closed = true;  ///< asserts the closing relation holds

    /// Time between the two kicks, i.e. the evolution time of each arm.
    double total_time() const noexcept {
        return convention == TimeConvention::FullT ? 2.0 * duration : duration;
    }
    double g_bar() const noexcept { return masses.ratio() * forces.g; }
    double delta_a() const noexcept;
    double v0() const noexcept { return forces.p0 / masses.inertial; }

    /// True when 2 p0 = (m_i delta_a + m_g g) T_total to 1e-12 relative.
    bool satisfies_closing() const noexcept;

    /// Throws InvalidParameterError on any violated invariant, including a
    /// `closed` flag that the parameters do not honour.
    void validate() const;
    void require_closed() const;
};

// -- condition solvers ------------------------------------------------------

double residual_acceleration(const MassPair& masses, double g, double a);

/// T = 2 p0 / (m_i delta_a + m_g g). Throws NonClosableError when the
/// denominator is not positive and InvalidParameterError when p0 <= 0.
double solve_closing_time(const MassPair& masses, double g, double delta_a, double p0);

/// v0 = T ((m_g/m_i) g + delta_a) / 2, the inverse of solve_closing_time.
double solve_closing_velocity(const MassPair& masses, double g, double delta_a, double T);

/// a = (m_g/m_i) g.
double levitation_acceleration(const MassPair& masses, double g);

/// Builds a closed spec at fixed duration, solving p0.
InterferometerSpec closed_spec_for_duration(const MassPair& masses, double g, double a,
                                            double duration,
                                            TimeConvention convention = TimeConvention::HalfT,
                                            double hbar = 1.0, double tau = 0.0);

/// Builds a closed spec at fixed kick momentum, solving the duration.
InterferometerSpec closed_spec_for_momentum(const MassPair& masses, double g, double a,
                                            double p0,
                                            TimeConvention convention = TimeConvention::HalfT,
                                            double hbar = 1.0, double tau = 0.0);

// -- reports ----------------------------------------------------------------

/// Wraps a phase into (-pi, pi].
double wrap_phase(double phi) noexcept;

struct EngineError {
    std::string engine;
    std::string error;  ///< error name, e.g. "GridTooCoarseError"
    std::string message;

    bool operator==(const EngineError&) const = default;
};

struct PhaseReport {
    std::optional<double> phi_classical;
    std::optional<double> phi_analytic;
    std::optional<double> phi_numeric;
    std::optional<double> abs_I_numeric;
    double probability = 1.0;
    double max_pairwise_diff = 0.0;
    std::vector<std::string> warnings;
    std::vector<EngineError> errors;

    /// Recomputes max_pairwise_diff from the present phases, modulo 2 pi.
    void update_pairwise_diff();

    bool operator==(const PhaseReport&) const = default;
};

}  // namespace qgi
