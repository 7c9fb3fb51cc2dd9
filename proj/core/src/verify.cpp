#include "qgi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "qgi/analytic.hpp"
#include "qgi/classical.hpp"
#include "qgi/errors.hpp"

namespace qgi::verify {

namespace {

using Clock = std::chrono::steady_clock;

/// Relative error measured against the larger of |reference| and `scale`,
/// where `scale` is the sum of magnitudes of the terms that build the value
/// (so results that cancel to ~0 are judged against their inputs).
double rel_error(double value, double reference, double scale) {
    const double denom = std::max({std::abs(reference), scale, 1e-300});
    return std::abs(value - reference) / denom;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

template <class Body>
CriterionResult timed(int id, std::string title, Body&& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    const auto start = Clock::now();
    try {
        body(r);
    } catch (const Error& e) {
        r.passed = false;
        r.detail = e.name() + ": " + e.what();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

InterferometerSpec levitated_unit_spec() {
    // m_i = m_g = hbar = 1, g = 1, delta_a = 0, p0 = 1  =>  T = 2
    return closed_spec_for_momentum(MassPair{1.0, 1.0}, 1.0, 1.0, 1.0);
}

}  // namespace

InterferometerSpec random_closed_spec(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const double m_i = uniform(0.5, 2.0);
    const double m_g = m_i * uniform(0.5, 1.5);
    const double g = uniform(0.2, 1.5);
    const double a = uniform(0.5, 2.0);
    const double T = uniform(0.5, 2.0);
    return closed_spec_for_duration(MassPair{m_i, m_g}, g, a, T);
}

CriterionResult check_levitated_reproduction(const SuiteOptions& opts) {
    return timed(1, "levitated unit case: analytic -1/3, numeric and |I|", [&](CriterionResult& r) {
        const auto start = Clock::now();
        const InterferometerSpec spec = levitated_unit_spec();
        const double phi_analytic = analytic::interference_phase(spec);
        const auto overlap = numeric::overlap_interference(spec, opts.resolution);
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        const double phi_numeric = numeric::extract_phase(overlap.I);
        const double analytic_err = std::abs(phi_analytic + 1.0 / 3.0);
        const double numeric_err = std::abs(wrap_phase(phi_numeric - phi_analytic));
        const double modulus_err = std::abs(std::abs(overlap.I) - 1.0);
        r.passed = spec.total_time() == 2.0 && analytic_err <= 1e-15 && numeric_err <= 1e-6 &&
                   modulus_err <= 1e-6 && elapsed < 5.0;
        r.detail = "T=" + fmt(spec.total_time()) + " |phi_a+1/3|=" + fmt(analytic_err) +
                   " |phi_n-phi_a|=" + fmt(numeric_err) + " (tol 1e-6) ||I|-1|=" +
                   fmt(modulus_err) + " (tol 1e-6) runtime=" + fmt(elapsed) + " s (< 5 s)";
    });
}

CriterionResult check_g_form_identity(const SuiteOptions& opts) {
    return timed(2, "interference term equals its g-parametrised form", [&](CriterionResult& r) {
        double worst = 0.0;
        for (std::size_t i = 0; i < opts.randomized_count; ++i) {
            const InterferometerSpec spec = random_closed_spec(opts.seed, i);
            const double diff = std::abs(analytic::interference_phase(spec) -
                                         analytic::interference_phase_g_form(spec));
            worst = std::max(worst, diff);
        }
        r.passed = opts.randomized_count >= 1000 && worst <= 1e-12;
        r.detail = std::to_string(opts.randomized_count) + " specs, max |dphi|=" + fmt(worst) +
                   " rad (tol 1e-12)";
    });
}

CriterionResult check_action_ledger(const SuiteOptions& opts) {
    return timed(3, "action ledger: closed forms vs quadrature", [&](CriterionResult& r) {
        double worst_ballistic = 0.0;
        double worst_kick = 0.0;
        double worst_reference = 0.0;
        double worst_total = 0.0;
        double worst_first_kick = 0.0;
        for (std::size_t i = 0; i < opts.randomized_count; ++i) {
            const InterferometerSpec spec = random_closed_spec(opts.seed + 1, i);
            const MassPair& ms = spec.masses;
            const double m = ms.inertial;
            const double hbar = spec.forces.hbar;
            const double g = spec.forces.g;
            const double a = spec.forces.a;
            const double gb = spec.g_bar();
            const double T = spec.total_time();
            const double Th = 0.5 * T;
            const double v0 = spec.v0();
            const double tau0 = 1e-2 * T;

            const double free_quad =
                classical::action_linear_potential_quadrature(ms, -ms.gravitational * g, 0.0, v0, T);
            const classical::PhaseSpacePoint entry{v0 * T - 0.5 * gb * T * T, v0 - gb * T};
            const double kick1_quad =
                classical::kick_action_extrapolated(ms, g, v0, tau0, {0.0, 0.0});
            const double kick2_quad = classical::kick_action_extrapolated(ms, g, v0, tau0, entry);
            const double ballistic_quad = (free_quad + kick1_quad + kick2_quad) / hbar;

            const double ballistic_scale =
                m / hbar * (8.0 / 3.0 * gb * gb + 6.0 * std::abs(a) * gb + 3.0 * a * a) * Th * Th * Th;
            worst_ballistic = std::max(
                worst_ballistic, rel_error(ballistic_quad, classical::ballistic_phase_closed_form(spec),
                                           ballistic_scale));

            const double kick_closed = 2.0 * m * v0 * Th / hbar * (v0 - gb * Th);
            const double kick_scale = 2.0 * m * std::abs(v0) * Th / hbar * (std::abs(v0) + gb * Th);
            worst_kick = std::max(worst_kick, rel_error(kick2_quad / hbar, kick_closed, kick_scale));
            worst_first_kick = std::max(worst_first_kick, std::abs(kick1_quad) / (hbar * kick_scale));

            const double weight = ms.gravitational * g;
            const double f_mag = m * a;
            const double reference_quad = classical::action_linear_potential_quadrature(
                                              ms, f_mag - weight, 0.0, 0.0, T) / hbar;
            const double reference_scale = Th * Th * Th / hbar * 8.0 / 3.0 *
                                           (weight + std::abs(f_mag)) * (weight + std::abs(f_mag)) / m;
            worst_reference = std::max(
                worst_reference, rel_error(reference_quad, classical::reference_phase_closed_form(spec),
                                           reference_scale));

            const double da = spec.delta_a();
            const double total_scale =
                std::max(1.0, Th * Th * Th / (3.0 * hbar) * (weight * weight / m + m * da * da));
            worst_total = std::max(
                worst_total, std::abs(classical::phase_difference_classical(spec) -
                                      classical::phase_difference_residual_form(spec)) / total_scale);
        }
        r.passed = opts.randomized_count >= 1000 && worst_ballistic <= 1e-10 && worst_kick <= 1e-10 &&
                   worst_reference <= 1e-10 && worst_first_kick <= 1e-10 && worst_total <= 1e-12;
        r.detail = std::to_string(opts.randomized_count) + " sets; rel err ballistic=" +
                   fmt(worst_ballistic) + " kick=" + fmt(worst_kick) + " first-kick=" +
                   fmt(worst_first_kick) + " reference=" + fmt(worst_reference) +
                   " (tol 1e-10); total dphi=" + fmt(worst_total) + " (tol 1e-12)";
    });
}

CriterionResult check_convention_bridge(const SuiteOptions& opts) {
    return timed(4, "convention bridge: classical (2T) vs analytic (T_total)", [&](CriterionResult& r) {
        double worst = 0.0;
        for (std::size_t i = 0; i < opts.randomized_count; ++i) {
            const InterferometerSpec base = random_closed_spec(opts.seed + 2, i);
            const double half = base.total_time();
            const InterferometerSpec full = closed_spec_for_duration(
                base.masses, base.forces.g, base.forces.a, half, TimeConvention::FullT);
            const InterferometerSpec doubled = closed_spec_for_duration(
                base.masses, base.forces.g, base.forces.a, 2.0 * half, TimeConvention::HalfT);
            const double phi_classical = classical::phase_difference_classical(full);
            const double phi_analytic = analytic::interference_phase(doubled);
            worst = std::max(worst, std::abs(phi_classical - phi_analytic) /
                                        std::max(1.0, std::abs(phi_analytic)));
        }
        r.passed = opts.randomized_count >= 1000 && worst <= 1e-12;
        r.detail = std::to_string(opts.randomized_count) + " specs, max |dphi|/max(1,|phi|)=" +
                   fmt(worst) + " (tol 1e-12)";
    });
}

CriterionResult check_kennard_oracle(const SuiteOptions& opts) {
    return timed(5, "Kennard phase equals closed-path action / hbar", [&](CriterionResult& r) {
        std::mt19937_64 rng(opts.seed + 3);
        std::uniform_real_distribution<double> mass(0.1, 10.0);
        std::uniform_real_distribution<double> accel(-5.0, 5.0);
        std::uniform_real_distribution<double> time(0.05, 5.0);
        std::uniform_real_distribution<double> hbar(0.5, 2.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < opts.kennard_count; ++i) {
            const double m = mass(rng);
            const double acc = accel(rng);
            const double T = time(rng);
            const double h = hbar(rng);
            // z(0) = z(T) = 0 under force m*acc: z = acc t (t - T) / 2.
            const double action = classical::action_linear_potential_quadrature(
                MassPair{m, m}, m * acc, 0.0, -0.5 * acc * T, T);
            worst = std::max(worst, rel_error(analytic::kennard_phase(m, acc, T, h), action / h, 0.0));
        }
        r.passed = opts.kennard_count >= 100 && worst <= 1e-10;
        r.detail = std::to_string(opts.kennard_count) + " draws, max rel err=" + fmt(worst) +
                   " (tol 1e-10)";
    });
}

CriterionResult check_quantum_closure(const SuiteOptions& opts) {
    return timed(6, "quantum closure |I| = 1; broken closing loses contrast", [&](CriterionResult& r) {
        std::vector<InterferometerSpec> suite{levitated_unit_spec()};
        // Both arms identical: no forces, no kicks.
        suite.push_back([] {
            InterferometerSpec s;
            s.forces = ArmForces{0.0, 0.0, 0.0, 0.0, 1.0};
            s.duration = 1.5;
            return s;
        }());
        for (std::size_t i = 0; i < opts.numeric_specs; ++i) {
            suite.push_back(random_closed_spec(opts.seed + 4, i));
        }
        double worst_low = 0.0;
        double worst_high = 0.0;
        double worst_phase = 0.0;
        for (const auto& spec : suite) {
            const auto overlap = numeric::overlap_interference(spec, opts.resolution);
            const double modulus = std::abs(overlap.I);
            worst_low = std::max(worst_low, 1.0 - modulus);
            worst_high = std::max(worst_high, modulus - 1.0);
            worst_phase = std::max(worst_phase, std::abs(wrap_phase(
                std::arg(overlap.I) - analytic::interference_phase(spec))));
        }
        InterferometerSpec broken = levitated_unit_spec();
        broken.duration *= 1.1;
        broken.closed = false;
        const auto broken_overlap = numeric::overlap_interference(broken, opts.resolution);
        const double broken_modulus = std::abs(broken_overlap.I);

        r.passed = worst_low <= 1e-6 && worst_high <= 1e-9 && broken_modulus < 0.999 &&
                   broken_overlap.closure_violation;
        r.detail = std::to_string(suite.size()) + " closed specs: max(1-|I|)=" + fmt(worst_low) +
                   " (tol 1e-6), max(|I|-1)=" + fmt(worst_high) + " (tol 1e-9), max phase err=" +
                   fmt(worst_phase) + "; broken |I|=" + fmt(broken_modulus) + " (need < 0.999)";
    });
}

CriterionResult check_g_sensitivity(const SuiteOptions& opts) {
    return timed(7, "g-sensitivity at fixed a: d(phase)/dg = -m_g a T^3 / (12 hbar)", [&](CriterionResult& r) {
        struct Case {
            MassPair masses;
            double g, a, T;
        };
        std::vector<Case> cases{{MassPair{1.0, 1.0}, 1.0, 1.0, 1.0}};
        for (std::size_t i = 0; i < 20; ++i) {
            const InterferometerSpec s = random_closed_spec(opts.seed + 5, i);
            cases.push_back({s.masses, s.forces.g, s.forces.a, s.duration});
        }
        double worst = 0.0;
        double smallest = INFINITY;
        for (const Case& c : cases) {
            const double eps = 1e-3 * c.g;
            auto phase_at = [&](double g) {
                return analytic::interference_phase(
                    closed_spec_for_duration(c.masses, g, c.a, c.T));
            };
            const double slope = (phase_at(c.g + eps) - phase_at(c.g - eps)) / (2.0 * eps);
            const double expected = -c.masses.gravitational * c.a * c.T * c.T * c.T / 12.0;
            worst = std::max(worst, rel_error(slope, expected, 0.0));
            smallest = std::min(smallest, std::abs(slope));
        }
        r.passed = worst <= 1e-8 && smallest > 0.0;
        r.detail = std::to_string(cases.size()) + " cases, max rel err=" + fmt(worst) +
                   " (tol 1e-8), min |slope|=" + fmt(smallest);
    });
}

CriterionResult check_cubic_law(const SuiteOptions&) {
    return timed(8, "T^3 law over two decades", [&](CriterionResult& r) {
        constexpr int kPoints = 21;
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (int k = 0; k < kPoints; ++k) {
            const double T = 0.1 * std::pow(100.0, static_cast<double>(k) / (kPoints - 1));
            const InterferometerSpec spec = closed_spec_for_duration(MassPair{1.0, 1.0}, 1.0, 1.0, T);
            const double x = std::log(T);
            const double y = std::log(std::abs(analytic::interference_phase(spec)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
        r.passed = std::abs(slope - 3.0) <= 1e-6;
        r.detail = "T in [0.1, 10], fitted slope=" + std::to_string(slope) + " |slope-3|=" +
                   fmt(std::abs(slope - 3.0)) + " (tol 1e-6)";
    });
}

CriterionResult check_state_independence(const SuiteOptions& opts) {
    return timed(9, "numeric phase independent of the initial Gaussian", [&](CriterionResult& r) {
        const InterferometerSpec spec = levitated_unit_spec();
        const double base_width = std::sqrt(spec.forces.hbar * spec.total_time() /
                                            (2.0 * spec.masses.inertial));
        double lo = INFINITY;
        double hi = -INFINITY;
        int runs = 0;
        for (double scale : {0.5, 1.0, 2.0}) {
            for (double offset : {0.0, 0.75, -1.5}) {
                numeric::InitialState init;
                init.width = scale * base_width;
                init.z_center = offset;
                init.p_center = offset == 0.0 ? 0.0 : 0.25;
                const double phi =
                    numeric::extract_phase(numeric::overlap_interference(spec, opts.resolution, init).I);
                lo = std::min(lo, phi);
                hi = std::max(hi, phi);
                ++runs;
            }
        }
        r.passed = hi - lo < 1e-6;
        r.detail = std::to_string(runs) + " initial states, phase spread=" + fmt(hi - lo) +
                   " rad (tol 1e-6)";
    });
}

CriterionResult check_split_step_convergence(const SuiteOptions&) {
    return timed(10, "split-step order 2; exact-kernel agrees with converged split-step", [&](CriterionResult& r) {
        // delta_a != 0 so both arms carry a Kennard phase.
        const InterferometerSpec spec = closed_spec_for_momentum(MassPair{1.0, 1.0}, 1.0, 0.5, 1.0);
        const double exact = analytic::interference_phase(spec);
        const std::size_t n_points = 2048;

        std::vector<double> errors;
        for (std::size_t steps : {64u, 128u, 256u, 512u}) {
            const auto ov = numeric::overlap_interference(
                spec, numeric::Resolution{n_points, steps, numeric::EvolutionMethod::SplitStep});
            errors.push_back(std::abs(wrap_phase(std::arg(ov.I) - exact)));
        }
        double min_ratio = INFINITY;
        for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
            min_ratio = std::min(min_ratio, errors[k] / errors[k + 1]);
        }

        const auto converged = numeric::overlap_interference(
            spec, numeric::Resolution{n_points, 16384, numeric::EvolutionMethod::SplitStep});
        const auto kernel = numeric::overlap_interference(
            spec, numeric::Resolution{n_points, 1, numeric::EvolutionMethod::ExactKernelConvolution});
        const double method_gap = std::abs(wrap_phase(std::arg(kernel.I) - std::arg(converged.I)));

        r.passed = min_ratio >= 3.5 && method_gap <= 1e-7;
        r.detail = "errors " + fmt(errors[0]) + " -> " + fmt(errors.back()) +
                   ", min ratio per doubling=" + std::to_string(min_ratio) +
                   " (need >= 3.5); |kernel - split-step(16384)|=" + fmt(method_gap) +
                   " (tol 1e-7)";
    });
}

std::vector<CriterionResult> run_all(const SuiteOptions& opts,
                                     const std::function<void(const CriterionResult&)>& on_result) {
    using Check = CriterionResult (*)(const SuiteOptions&);
    constexpr Check checks[] = {
        check_levitated_reproduction, check_g_form_identity,   check_action_ledger,
        check_convention_bridge,      check_kennard_oracle,    check_quantum_closure,
        check_g_sensitivity,          check_cubic_law,         check_state_independence,
        check_split_step_convergence,
    };
    std::vector<CriterionResult> results;
    for (Check check : checks) {
        results.push_back(check(opts));
        if (on_result) on_result(results.back());
    }
    return results;
}

}  // namespace qgi::verify
