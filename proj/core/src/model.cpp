#include "qgi/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qgi/errors.hpp"

namespace qgi {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvalidParameterError(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void MassPair::validate() const {
    require(finite(inertial) && inertial > 0.0, "inertial mass must be positive and finite");
    require(finite(gravitational) && gravitational > 0.0,
            "gravitational mass must be positive and finite");
}

void ArmForces::validate() const {
    require(finite(g) && g >= 0.0, "g must be finite and non-negative");
    require(finite(a), "a must be finite");
    require(finite(p0), "p0 must be finite");
    require(finite(tau) && tau >= 0.0, "tau must be finite and non-negative");
    require(finite(hbar) && hbar > 0.0, "hbar must be positive and finite");
}

std::string_view to_string(TimeConvention c) noexcept {
    return c == TimeConvention::FullT ? "full" : "half";
}

TimeConvention parse_time_convention(std::string_view s) {
    if (s == "half" || s == "HalfT") return TimeConvention::HalfT;
    if (s == "full" || s == "FullT") return TimeConvention::FullT;
    throw InvalidParameterError("unknown time convention '" + std::string(s) +
                                "' (expected half or full)");
}

double InterferometerSpec::delta_a() const noexcept {
    return residual_acceleration(masses, forces.g, forces.a);
}

bool InterferometerSpec::satisfies_closing() const noexcept {
    const double lhs = 2.0 * forces.p0;
    const double rhs = (masses.inertial * delta_a() + masses.gravitational * forces.g) *
                       total_time();
    const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                   masses.gravitational * forces.g * total_time()});
    return std::abs(lhs - rhs) <= 1e-12 * scale;
}

void InterferometerSpec::validate() const {
    masses.validate();
    forces.validate();
    require(finite(duration) && duration > 0.0, "duration must be positive and finite");
    require(finite(delta_a()), "residual acceleration must be finite");
    if (closed && !satisfies_closing()) {
        std::ostringstream os;
        os.precision(17);
        os << "spec is flagged closed but 2 p0 = " << 2.0 * forces.p0
           << " differs from (m_i delta_a + m_g g) T = "
           << (masses.inertial * delta_a() + masses.gravitational * forces.g) * total_time();
        throw InvalidParameterError(os.str());
    }
}

void InterferometerSpec::require_closed() const {
    validate();
    if (!closed) throw ClosureRequiredError("operation requires a closed interferometer spec");
}

double residual_acceleration(const MassPair& masses, double g, double a) {
    return a - masses.ratio() * g;
}

double solve_closing_time(const MassPair& masses, double g, double delta_a, double p0) {
    masses.validate();
    const double denom = masses.inertial * delta_a + masses.gravitational * g;
    if (!(denom > 0.0)) {
        throw NonClosableError("m_i delta_a + m_g g must be positive for the arms to re-intersect");
    }
    require(finite(p0) && p0 > 0.0, "p0 must be positive to solve for the closing time");
    return 2.0 * p0 / denom;
}

double solve_closing_velocity(const MassPair& masses, double g, double delta_a, double T) {
    masses.validate();
    require(finite(T) && T > 0.0, "T must be positive");
    return T * (masses.ratio() * g + delta_a) / 2.0;
}

double levitation_acceleration(const MassPair& masses, double g) {
    masses.validate();
    return masses.ratio() * g;
}

InterferometerSpec closed_spec_for_duration(const MassPair& masses, double g, double a,
                                            double duration, TimeConvention convention,
                                            double hbar, double tau) {
    InterferometerSpec spec;
    spec.masses = masses;
    spec.forces = ArmForces{g, a, 0.0, tau, hbar};
    spec.duration = duration;
    spec.convention = convention;
    spec.closed = true;
    require(finite(duration) && duration > 0.0, "duration must be positive and finite");
    const double v0 = solve_closing_velocity(masses, g, spec.delta_a(), spec.total_time());
    spec.forces.p0 = masses.inertial * v0;
    spec.validate();
    return spec;
}

InterferometerSpec closed_spec_for_momentum(const MassPair& masses, double g, double a,
                                            double p0, TimeConvention convention,
                                            double hbar, double tau) {
    InterferometerSpec spec;
    spec.masses = masses;
    spec.forces = ArmForces{g, a, p0, tau, hbar};
    spec.convention = convention;
    spec.closed = true;
    const double total = solve_closing_time(masses, g, spec.delta_a(), p0);
    spec.duration = convention == TimeConvention::FullT ? total / 2.0 : total;
    spec.validate();
    return spec;
}

double wrap_phase(double phi) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phi, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

void PhaseReport::update_pairwise_diff() {
    std::vector<double> present;
    for (const auto& p : {phi_classical, phi_analytic, phi_numeric}) {
        if (p) present.push_back(*p);
    }
    max_pairwise_diff = 0.0;
    for (std::size_t i = 0; i < present.size(); ++i) {
        for (std::size_t j = i + 1; j < present.size(); ++j) {
            max_pairwise_diff =
                std::max(max_pairwise_diff, std::abs(wrap_phase(present[i] - present[j])));
        }
    }
}

}  // namespace qgi
