#include "qgi/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "qgi/analytic.hpp"
#include "qgi/errors.hpp"

namespace qgi::numeric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSupportSigmas = 5.0;

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os.precision(10);
    os << what << " (" << value << ")";
    return os.str();
}

void check_support(const WaveGrid& psi, const EvolutionPlan& plan) {
    const Moments mo = moments(psi, plan.hbar);
    const GridConfig& cfg = psi.config();
    const double p_limit = kPi * plan.hbar / cfg.dz();
    const double sigma_p = std::sqrt(std::max(mo.var_p, 0.0));
    const double m = plan.mass;
    const double c = plan.linear_coeff;

    for (std::size_t s = 0; s <= plan.n_steps; ++s) {
        const double t = plan.duration * static_cast<double>(s) / static_cast<double>(plan.n_steps);
        const double mean_z = mo.mean_z + mo.mean_p * t / m - 0.5 * c * t * t / m;
        const double var_z = mo.var_z + 2.0 * mo.cov_zp * t / m + mo.var_p * t * t / (m * m);
        const double reach = kSupportSigmas * std::sqrt(std::max(var_z, 0.0));
        if (mean_z - reach < cfg.z_min || mean_z + reach > cfg.z_max) {
            throw BoundaryEscapeError(
                t, describe("packet support leaves the grid at t", t));
        }
        const double mean_p = mo.mean_p - c * t;
        if (std::abs(mean_p) + kSupportSigmas * sigma_p >= p_limit) {
            throw BoundaryEscapeError(
                t, describe("momentum support reaches the grid's Nyquist limit at t", t));
        }
    }
}

void evolve_split_step(WaveGrid& psi, const EvolutionPlan& plan) {
    const std::size_t n = psi.size();
    const double dt = plan.duration / static_cast<double>(plan.n_steps);
    const double length = psi.config().z_max - psi.config().z_min;
    const double hbar = plan.hbar;

    std::vector<Complex> half_potential(n);
    std::vector<Complex> full_potential(n);
    std::vector<Complex> kinetic(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v = plan.linear_coeff * psi.position(j);
        half_potential[j] = std::polar(1.0, -0.5 * v * dt / hbar);
        full_potential[j] = std::polar(1.0, -v * dt / hbar);
        const double k = detail::wavenumber(j, n, length);
        // 1/n folds in the normalisation of the unnormalised inverse transform.
        kinetic[j] = std::polar(1.0 / static_cast<double>(n), -hbar * k * k * dt / (2.0 * plan.mass));
    }

    detail::FftBuffer buffer(n);
    auto work = buffer.data();
    const auto amps = psi.amplitudes();
    for (std::size_t j = 0; j < n; ++j) work[j] = amps[j] * half_potential[j];
    for (std::size_t s = 0; s < plan.n_steps; ++s) {
        buffer.forward();
        for (std::size_t j = 0; j < n; ++j) work[j] *= kinetic[j];
        buffer.backward();
        const auto& potential = s + 1 == plan.n_steps ? half_potential : full_potential;
        for (std::size_t j = 0; j < n; ++j) work[j] *= potential[j];
    }
    std::copy(work.begin(), work.end(), amps.begin());
}

void evolve_exact_kernel(WaveGrid& psi, const EvolutionPlan& plan) {
    const GridConfig& cfg = psi.config();
    const double T = std::abs(plan.duration);
    const double accel = -plan.linear_coeff / plan.mass;
    const analytic::PropagatorKernel kernel{
        plan.mass, accel, T, plan.hbar,
        plan.duration >= 0.0 ? analytic::Direction::Forward : analytic::Direction::Backward};

    // The Riemann sum over z_from must resolve the kernel's chirp.
    const Moments mo = moments(psi, plan.hbar);
    const double length = cfg.z_max - cfg.z_min;
    const double max_gradient = plan.mass * length / (plan.hbar * T) +
                                std::abs(plan.mass * accel) * T / (2.0 * plan.hbar) +
                                (std::abs(mo.mean_p) + kSupportSigmas * std::sqrt(mo.var_p)) /
                                    plan.hbar;
    if (max_gradient * cfg.dz() >= kPi) {
        throw GridTooCoarseError(
            describe("grid spacing does not resolve the propagator chirp; phase step per cell",
                     max_gradient * cfg.dz()));
    }

    const auto in = psi.amplitudes();
    const std::size_t n = psi.size();
    const double dz = cfg.dz();
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double z_to = psi.position(j);
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            if (in[k] == Complex{}) continue;
            acc += analytic::propagator_value(kernel, psi.position(k), z_to) * in[k];
        }
        out[j] = acc * dz;
    }
    std::copy(out.begin(), out.end(), in.begin());
}

}  // namespace

void GridConfig::validate() const {
    if (!(std::isfinite(z_min) && std::isfinite(z_max) && z_max > z_min)) {
        throw InvalidParameterError("grid needs finite z_min < z_max");
    }
    if (n_points < 256 || !std::has_single_bit(n_points)) {
        throw InvalidParameterError("grid n_points must be a power of two >= 256");
    }
}

WaveGrid::WaveGrid(const GridConfig& config) : config_(config) {
    config_.validate();
    amplitudes_.assign(config_.n_points, Complex{});
}

double WaveGrid::norm() const noexcept {
    double sum = 0.0;
    for (const Complex& a : amplitudes_) sum += std::norm(a);
    return sum * dz();
}

Complex inner_product(const WaveGrid& bra, const WaveGrid& ket) {
    const GridConfig& a = bra.config();
    const GridConfig& b = ket.config();
    if (a.z_min != b.z_min || a.z_max != b.z_max || a.n_points != b.n_points) {
        throw InvalidParameterError("inner product of states on different grids");
    }
    Complex sum{0.0, 0.0};
    const auto x = bra.amplitudes();
    const auto y = ket.amplitudes();
    for (std::size_t j = 0; j < x.size(); ++j) sum += std::conj(x[j]) * y[j];
    return sum * bra.dz();
}

Moments moments(const WaveGrid& psi, double hbar) {
    const std::size_t n = psi.size();
    const auto amps = psi.amplitudes();
    const double length = psi.config().z_max - psi.config().z_min;

    Moments mo;
    double weight = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(amps[j]);
        const double z = psi.position(j);
        weight += w;
        z1 += w * z;
        z2 += w * z * z;
    }
    if (weight == 0.0) throw InvalidParameterError("moments of a zero state");
    mo.mean_z = z1 / weight;
    mo.var_z = z2 / weight - mo.mean_z * mo.mean_z;

    detail::FftBuffer buffer(n);
    auto spec = buffer.data();
    std::copy(amps.begin(), amps.end(), spec.begin());
    buffer.forward();
    double kw = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(spec[j]);
        const double p = hbar * detail::wavenumber(j, n, length);
        kw += w;
        p1 += w * p;
        p2 += w * p * p;
    }
    mo.mean_p = p1 / kw;
    mo.var_p = p2 / kw - mo.mean_p * mo.mean_p;

    // p psi by spectral differentiation, then Re <psi| z p |psi>.
    for (std::size_t j = 0; j < n; ++j) {
        spec[j] *= hbar * detail::wavenumber(j, n, length) / static_cast<double>(n);
    }
    buffer.backward();
    double zp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        zp += (std::conj(amps[j]) * psi.position(j) * spec[j]).real();
    }
    mo.cov_zp = zp / weight - mo.mean_z * mo.mean_p;
    return mo;
}

WaveGrid make_gaussian(const GridConfig& grid, double z_center, double p_center, double width,
                       double hbar) {
    grid.validate();
    if (!(width > 4.0 * grid.dz())) {
        throw GridTooCoarseError(describe("packet width must exceed 4 dz; width/dz", width / grid.dz()));
    }
    if (z_center - kSupportSigmas * width < grid.z_min ||
        z_center + kSupportSigmas * width > grid.z_max) {
        throw PacketOutOfBoundsError("packet 5-sigma support does not fit inside the grid");
    }
    const double p_reach = std::abs(p_center) + kSupportSigmas * hbar / (2.0 * width);
    if (p_reach >= kPi * hbar / grid.dz()) {
        throw GridTooCoarseError("packet momentum support exceeds the grid's Nyquist limit");
    }

    WaveGrid psi(grid);
    auto amps = psi.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j) {
        const double x = psi.position(j) - z_center;
        amps[j] = std::polar(std::exp(-x * x / (4.0 * width * width)), p_center * x / hbar);
    }
    const double scale = 1.0 / std::sqrt(psi.norm());
    for (Complex& a : amps) a *= scale;
    return psi;
}

void apply_kick(WaveGrid& psi, double p0, double hbar) {
    if (std::abs(p0) * psi.dz() / hbar >= kPi) {
        throw AliasingError(describe("kick aliases on this grid; p0 dz / hbar", p0 * psi.dz() / hbar));
    }
    if (p0 == 0.0) return;
    auto amps = psi.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] *= std::polar(1.0, p0 * psi.position(j) / hbar);
    }
}

void evolve(WaveGrid& psi, const EvolutionPlan& plan) {
    if (plan.n_steps < 1) throw InvalidParameterError("evolution needs n_steps >= 1");
    if (!(plan.mass > 0.0 && plan.hbar > 0.0)) {
        throw InvalidParameterError("evolution needs positive mass and hbar");
    }
    if (!std::isfinite(plan.duration) || !std::isfinite(plan.linear_coeff)) {
        throw InvalidParameterError("evolution plan must be finite");
    }
    if (plan.duration == 0.0) return;
    check_support(psi, plan);
    if (plan.method == EvolutionMethod::SplitStep) {
        evolve_split_step(psi, plan);
    } else {
        evolve_exact_kernel(psi, plan);
    }
}

GridPlan plan_grid(const InterferometerSpec& spec, const InitialState& initial,
                   std::size_t n_points) {
    spec.validate();
    const double m = spec.masses.inertial;
    const double hbar = spec.forces.hbar;
    const double T = spec.total_time();
    const double p0 = spec.forces.p0;
    const double gb = spec.g_bar();
    const double da = spec.delta_a();

    const double width = initial.width.value_or(std::sqrt(hbar * T / (2.0 * m)));
    if (!(width > 0.0)) throw InvalidParameterError("initial width must be positive");

    // Centres of the ballistic arm forward in time, then backward under H_da.
    constexpr int kSamples = 64;
    const double z_c = initial.z_center;
    const double v_c = initial.p_center / m;
    const double v_kicked = v_c + p0 / m;
    double lo = z_c;
    double hi = z_c;
    const double z_end = z_c + v_kicked * T - 0.5 * gb * T * T;
    const double v_end = v_kicked - gb * T + p0 / m;
    for (int s = 0; s <= kSamples; ++s) {
        const double t = T * s / kSamples;
        const double forward = z_c + v_kicked * t - 0.5 * gb * t * t;
        const double backward = z_end - v_end * t + 0.5 * da * t * t;
        lo = std::min({lo, forward, backward});
        hi = std::max({hi, forward, backward});
    }
    // Largest spread over the 2T round trip of a minimum-uncertainty packet.
    const double spread = hbar * 2.0 * T / (2.0 * m * width * width);
    const double sigma_max = width * std::sqrt(1.0 + spread * spread);
    lo -= 10.0 * sigma_max;
    hi += 10.0 * sigma_max;
    const double pad = 0.1 * (hi - lo);

    GridPlan out;
    out.width = width;
    out.grid = GridConfig{lo - pad, hi + pad, n_points};
    out.grid.validate();

    const double dz = out.grid.dz();
    if (std::abs(p0) * dz / hbar >= kPi / 4.0) {
        throw GridTooCoarseError(describe("kick not resolved (need p0 dz / hbar < pi/4)",
                                          std::abs(p0) * dz / hbar));
    }
    const double p_arm = std::max({std::abs(initial.p_center) + 2.0 * std::abs(p0) + m * gb * T,
                                   std::abs(initial.p_center) + std::abs(p0),
                                   std::abs(v_end * m) + m * std::abs(da) * T});
    const double p_reach = p_arm + 10.0 * hbar / (2.0 * width);
    if (p_reach * dz / hbar >= kPi) {
        throw GridTooCoarseError(
            describe("momentum range exceeds the grid's Nyquist limit; raise n_points. p dz / hbar",
                     p_reach * dz / hbar));
    }
    if (!(width > 4.0 * dz)) {
        throw GridTooCoarseError("packet width must exceed 4 dz; raise n_points");
    }
    return out;
}

OverlapResult overlap_interference(const WaveGrid& psi, const InterferometerSpec& spec,
                                   const Resolution& resolution) {
    spec.validate();
    const double m = spec.masses.inertial;
    const double hbar = spec.forces.hbar;
    const double T = spec.total_time();
    const double p0 = spec.forces.p0;

    EvolutionPlan ballistic{m, spec.masses.gravitational * spec.forces.g, T, resolution.n_steps,
                            resolution.method, hbar};
    // exp(+i H_da T / hbar): evolution under H_da with the time step negated.
    EvolutionPlan reference{m, -m * spec.delta_a(), -T, resolution.n_steps, resolution.method,
                            hbar};

    WaveGrid chi = psi;
    apply_kick(chi, p0, hbar);
    evolve(chi, ballistic);
    apply_kick(chi, p0, hbar);
    evolve(chi, reference);

    OverlapResult out;
    out.I = inner_product(psi, chi);
    out.closure_violation = std::abs(out.I) < 1.0 - 1e-4;
    return out;
}

OverlapResult overlap_interference(const InterferometerSpec& spec, const Resolution& resolution,
                                   const InitialState& initial) {
    const GridPlan plan = plan_grid(spec, initial, resolution.n_points);
    const WaveGrid psi = make_gaussian(plan.grid, initial.z_center, initial.p_center, plan.width,
                                       spec.forces.hbar);
    return overlap_interference(psi, spec, resolution);
}

double extract_phase(Complex I) {
    if (!(std::abs(I) > 0.5)) {
        throw LowContrastError(describe("interference contrast too low to define a phase; |I|",
                                        std::abs(I)));
    }
    const double phi = std::arg(I);
    return phi == -kPi ? kPi : phi;
}

}  // namespace qgi::numeric
