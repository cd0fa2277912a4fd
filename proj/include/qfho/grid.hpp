#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "qfho/classical.hpp"
#include "qfho/force.hpp"

namespace qfho {

using Complex = std::complex<double>;

/// Uniform periodic grid x_j = x_min + j dx, j = 0..N-1, dx = (x_max - x_min) / N.
/// N is a power of two, at least 16.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
    double span() const noexcept { return x_max_ - x_min_; }
    double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * spacing(); }
    /// Angular wave number of FFT bin j in the standard FFT ordering.
    double wavenumber(std::size_t j) const noexcept;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
};

struct WaveFunction {
    Grid grid;
    std::vector<Complex> amplitudes;
    double t = 0.0;

    WaveFunction(Grid g, std::vector<Complex> a, double time = 0.0);
};

/// Sum |psi_j|^2 dx.
double norm_squared(const WaveFunction& psi);

/// Sum conj(a_j) b_j dx. Both states must live on the same grid.
Complex overlap(const WaveFunction& a, const WaveFunction& b);

/// Largest boundary-point magnitude relative to the peak magnitude.
double boundary_ratio(const WaveFunction& psi);

/// Throws PacketTouchesBoundary when boundary_ratio exceeds `tolerance`.
void check_boundary(const WaveFunction& psi, double tolerance = 1e-10);

/// Normalized psi(x) ~ exp(-(x - q0)^2 / (4 sigma^2) + i p0 x / hbar).
/// Requires the center at least 6 sigma from each edge (PacketTouchesBoundary).
WaveFunction make_gaussian(const Grid& grid, double q0, double p0, double sigma, double hbar);

/// Sum x_j |psi_j|^2 dx. Throws NotNormalized unless |norm^2 - 1| < 1e-6.
double expectation_q(const WaveFunction& psi);

/// Momentum expectation through the spectral derivative. Throws NotNormalized.
double expectation_p(const WaveFunction& psi, double hbar);

/// <p^2>/2m + m w^2 <x^2>/2 - f <x>.
double expectation_energy(const WaveFunction& psi, const PhysicalParams& params, double f);

/// Strang split-step Fourier propagator for H = p^2/2m + m w^2 x^2/2 - f(t) x.
///
/// Each step applies half a potential kick at the midpoint force, the full
/// kinetic phase in momentum space, and the other half kick. Owns its FFT
/// plans and scratch buffer, so one solver must not be shared between threads.
class SplitStepSolver {
public:
    SplitStepSolver(PhysicalParams params, ForceProfile profile, Grid grid);
    ~SplitStepSolver();
    SplitStepSolver(SplitStepSolver&&) noexcept;
    SplitStepSolver& operator=(SplitStepSolver&&) noexcept;
    SplitStepSolver(const SplitStepSolver&) = delete;
    SplitStepSolver& operator=(const SplitStepSolver&) = delete;

    /// Advances psi from psi.t to psi.t + dt in place.
    void step(WaveFunction& psi, double dt);

    /// Takes `steps` steps of size dt. Times are t0 + k dt (not accumulated).
    /// The observer, if any, sees the state after every step.
    void evolve(WaveFunction& psi, double dt, std::size_t steps,
                const std::function<void(const WaveFunction&)>& observer = {});

    const Grid& grid() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One split-step of size dt. Builds a throwaway solver.
WaveFunction step(const PhysicalParams& params, const ForceProfile& profile, const WaveFunction& psi, double dt);

/// CSV `x,re,im,prob_density`.
void write_wavefunction_csv(std::ostream& out, const WaveFunction& psi);

}  // namespace qfho
