#pragma once

// Grid-based evolution of the interferometer sequence. Computes
// I = <psi| exp(+i H_da T/hbar) exp(i p0 z/hbar) exp(-i H_g T/hbar) exp(i p0 z/hbar) |psi>
// directly, as an oracle for the closed forms in qgi/analytic.hpp.
//
// The whole observable is a phase: no step here may drop or renormalise a
// z-independent phase factor, and positions are always absolute.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qgi/model.hpp"

namespace qgi::numeric {

using Complex = std::complex<double>;

/// Periodic grid: points z_min + j dz for j < n_points, dz = (z_max - z_min) / n_points.
struct GridConfig {
    double z_min = -10.0;
    double z_max = 10.0;
    std::size_t n_points = 4096;

    double dz() const noexcept { return (z_max - z_min) / static_cast<double>(n_points); }
    void validate() const;  // n_points >= 256 and a power of two
};

class WaveGrid {
public:
    explicit WaveGrid(const GridConfig& config);

    const GridConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    double dz() const noexcept { return config_.dz(); }
    double position(std::size_t j) const noexcept {
        return config_.z_min + static_cast<double>(j) * dz();
    }

    std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    /// sum |psi|^2 dz
    double norm() const noexcept;

private:
    GridConfig config_;
    std::vector<Complex> amplitudes_;
};

/// sum conj(bra) ket dz; both grids must share a configuration.
Complex inner_product(const WaveGrid& bra, const WaveGrid& ket);

struct Moments {
    double mean_z = 0.0;
    double mean_p = 0.0;
    double var_z = 0.0;
    double var_p = 0.0;
    double cov_zp = 0.0;  ///< symmetrised <(zp + pz)/2> - <z><p>
};

/// Position and (spectral) momentum moments of a state.
Moments moments(const WaveGrid& psi, double hbar);

/// Normalised Gaussian with position standard deviation `width` and mean
/// momentum `p_center`. Throws GridTooCoarseError when width <= 4 dz and
/// PacketOutOfBoundsError when the 5-sigma support leaves the grid.
WaveGrid make_gaussian(const GridConfig& grid, double z_center, double p_center, double width,
                       double hbar = 1.0);

/// psi(z) -> exp(i p0 z / hbar) psi(z). Throws AliasingError when |p0| dz / hbar >= pi.
void apply_kick(WaveGrid& psi, double p0, double hbar = 1.0);

enum class EvolutionMethod {
    SplitStep,               ///< Strang splitting, kinetic step in Fourier space
    ExactKernelConvolution,  ///< single-step quadrature against the exact propagator
};

/// H = p^2 / 2m + linear_coeff * z. A negative duration evolves backward,
/// i.e. applies exp(+i H |duration| / hbar).
struct EvolutionPlan {
    double mass = 1.0;
    double linear_coeff = 0.0;
    double duration = 1.0;
    std::size_t n_steps = 2048;
    EvolutionMethod method = EvolutionMethod::SplitStep;
    double hbar = 1.0;
};

/// Evolves `psi` in place. Throws BoundaryEscapeError (carrying the time of
/// the first violation) when the predicted 5-sigma support leaves the grid
/// or the momentum support reaches the Nyquist limit.
void evolve(WaveGrid& psi, const EvolutionPlan& plan);

struct Resolution {
    std::size_t n_points = 4096;
    std::size_t n_steps = 2048;
    EvolutionMethod method = EvolutionMethod::SplitStep;
};

struct InitialState {
    double z_center = 0.0;
    double p_center = 0.0;
    /// Position standard deviation; defaults to sqrt(hbar T / (2 m_i)).
    std::optional<double> width;
};

struct GridPlan {
    GridConfig grid;
    double width = 0.0;
};

/// Sizes a grid that holds both arms (centres from the classical
/// trajectories, plus 10 spread widths) and checks the sampling criteria.
GridPlan plan_grid(const InterferometerSpec& spec, const InitialState& initial,
                   std::size_t n_points);

struct OverlapResult {
    Complex I;
    bool closure_violation = false;  ///< |I| < 1 - 1e-4
};

/// Runs the four-operator sequence on `psi` and returns <psi|U1^dagger U2|psi>.
/// The spec need not be closed; a non-closed loop shows up as lost contrast.
OverlapResult overlap_interference(const WaveGrid& psi, const InterferometerSpec& spec,
                                   const Resolution& resolution = {});

/// Same, on a Gaussian initial state with an automatically planned grid.
OverlapResult overlap_interference(const InterferometerSpec& spec,
                                   const Resolution& resolution = {},
                                   const InitialState& initial = {});

/// Principal argument in (-pi, pi]. Throws LowContrastError when |I| <= 0.5.
double extract_phase(Complex I);

}  // namespace qgi::numeric
