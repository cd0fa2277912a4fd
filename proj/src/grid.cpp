#include "qfho/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "fft.hpp"
#include "qfho/errors.hpp"

namespace qfho {

namespace {

constexpr double kNormTolerance = 1e-6;

void require_normalized(const WaveFunction& psi) {
    const double n = norm_squared(psi);
    if (!(std::abs(n - 1.0) < kNormTolerance)) throw NotNormalized(n);
}

void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid.size() != b.grid.size() || a.grid.x_min() != b.grid.x_min() || a.grid.x_max() != b.grid.x_max())
        throw InvalidArgument("wave functions live on different grids");
}

}  // namespace

Grid::Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max))
        throw InvalidArgument("grid requires finite x_min < x_max");
    if (n < 16 || (n & (n - 1)) != 0) throw InvalidArgument("grid point count must be a power of two >= 16");
}

double Grid::wavenumber(std::size_t j) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(n_);
    auto index = static_cast<std::ptrdiff_t>(j);
    if (index >= n / 2) index -= n;
    return 2.0 * std::numbers::pi * static_cast<double>(index) / span();
}

WaveFunction::WaveFunction(Grid g, std::vector<Complex> a, double time)
    : grid(g), amplitudes(std::move(a)), t(time) {
    if (amplitudes.size() != grid.size()) throw InvalidArgument("amplitude count does not match grid size");
}

double norm_squared(const WaveFunction& psi) {
    double sum = 0.0;
    for (const Complex& z : psi.amplitudes) sum += std::norm(z);
    return sum * psi.grid.spacing();
}

Complex overlap(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a, b);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < a.amplitudes.size(); ++j) sum += std::conj(a.amplitudes[j]) * b.amplitudes[j];
    return sum * a.grid.spacing();
}

double boundary_ratio(const WaveFunction& psi) {
    double peak = 0.0;
    for (const Complex& z : psi.amplitudes) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    const double edge = std::max(std::abs(psi.amplitudes.front()), std::abs(psi.amplitudes.back()));
    return edge / peak;
}

void check_boundary(const WaveFunction& psi, double tolerance) {
    const double ratio = boundary_ratio(psi);
    if (ratio > tolerance)
        throw PacketTouchesBoundary(
            fmt::format("wave function reaches the grid boundary (edge/peak = {:.3g} at t = {})", ratio, psi.t));
}

WaveFunction make_gaussian(const Grid& grid, double q0, double p0, double sigma, double hbar) {
    if (!(sigma > 0.0 && std::isfinite(sigma))) throw InvalidArgument("packet width sigma must be positive");
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    if (q0 - 6.0 * sigma < grid.x_min() || q0 + 6.0 * sigma > grid.x_max())
        throw PacketTouchesBoundary(
            fmt::format("packet at q0 = {} with sigma = {} is closer than 6 sigma to the grid edge", q0, sigma));

    std::vector<Complex> amplitudes(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        const double d = x - q0;
        amplitudes[j] = std::exp(Complex(-d * d / (4.0 * sigma * sigma), p0 * x / hbar));
    }
    WaveFunction psi(grid, std::move(amplitudes));
    const double scale = 1.0 / std::sqrt(norm_squared(psi));
    for (Complex& z : psi.amplitudes) z *= scale;
    return psi;
}

double expectation_q(const WaveFunction& psi) {
    require_normalized(psi);
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) sum += psi.grid.x(j) * std::norm(psi.amplitudes[j]);
    return sum * psi.grid.spacing();
}

double expectation_p(const WaveFunction& psi, double hbar) {
    require_normalized(psi);
    const std::size_t n = psi.grid.size();
    std::vector<Complex> derivative = psi.amplitudes;
    detail::Fft fft(n);
    fft.forward(derivative);
    for (std::size_t j = 0; j < n; ++j) {
        // The Nyquist mode has no well-defined odd derivative.
        const double k = (j == n / 2) ? 0.0 : psi.grid.wavenumber(j);
        derivative[j] *= Complex(0.0, k) / static_cast<double>(n);
    }
    fft.backward(derivative);

    Complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::conj(psi.amplitudes[j]) * Complex(0.0, -hbar) * derivative[j];
    sum *= psi.grid.spacing();
    const double scale = std::max(1.0, std::abs(sum.real()));
    if (std::abs(sum.imag()) > 1e-10 * scale)
        throw DomainError(fmt::format("momentum expectation has imaginary residue {:.3g}", sum.imag()));
    return sum.real();
}

double expectation_energy(const WaveFunction& psi, const PhysicalParams& params, double f) {
    const std::size_t n = psi.grid.size();
    const double dx = psi.grid.spacing();
    double potential = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = psi.grid.x(j);
        potential += (0.5 * params.mass * params.omega * params.omega * x * x - f * x) * std::norm(psi.amplitudes[j]);
    }
    potential *= dx;

    std::vector<Complex> spectrum = psi.amplitudes;
    detail::Fft fft(n);
    fft.forward(spectrum);
    double kinetic = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double k = psi.grid.wavenumber(j);
        kinetic += params.hbar * params.hbar * k * k / (2.0 * params.mass) * std::norm(spectrum[j]);
    }
    kinetic *= dx / static_cast<double>(n);
    return kinetic + potential;
}

struct SplitStepSolver::Impl {
    PhysicalParams params;
    ForceProfile profile;
    Grid grid;
    detail::Fft fft;
    std::vector<double> x;
    std::vector<double> harmonic;      // m w^2 x^2 / 2
    std::vector<double> kinetic_rate;  // hbar k^2 / 2m
    std::vector<Complex> kick;
    std::vector<Complex> drift;
    double cached_dt = -1.0;

    Impl(PhysicalParams p, ForceProfile f, Grid g)
        : params(p), profile(std::move(f)), grid(g), fft(g.size()), x(g.size()), harmonic(g.size()),
          kinetic_rate(g.size()), kick(g.size()), drift(g.size()) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            x[j] = grid.x(j);
            harmonic[j] = 0.5 * params.mass * params.omega * params.omega * x[j] * x[j];
            const double k = grid.wavenumber(j);
            kinetic_rate[j] = params.hbar * k * k / (2.0 * params.mass);
        }
    }

    void prepare_drift(double dt) {
        if (dt == cached_dt) return;
        const double inv_n = 1.0 / static_cast<double>(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) drift[j] = std::polar(inv_n, -kinetic_rate[j] * dt);
        cached_dt = dt;
    }

    void advance(WaveFunction& psi, double t_start, double dt) {
        const double f_mid = profile(t_start + 0.5 * dt);
        const double half = 0.5 * dt / params.hbar;
        for (std::size_t j = 0; j < grid.size(); ++j) kick[j] = std::polar(1.0, -(harmonic[j] - f_mid * x[j]) * half);
        prepare_drift(dt);

        auto& a = psi.amplitudes;
        for (std::size_t j = 0; j < a.size(); ++j) a[j] *= kick[j];
        fft.forward(a);
        for (std::size_t j = 0; j < a.size(); ++j) a[j] *= drift[j];
        fft.backward(a);
        for (std::size_t j = 0; j < a.size(); ++j) a[j] *= kick[j];
    }
};

SplitStepSolver::SplitStepSolver(PhysicalParams params, ForceProfile profile, Grid grid)
    : impl_(std::make_unique<Impl>(params, std::move(profile), grid)) {}

SplitStepSolver::~SplitStepSolver() = default;
SplitStepSolver::SplitStepSolver(SplitStepSolver&&) noexcept = default;
SplitStepSolver& SplitStepSolver::operator=(SplitStepSolver&&) noexcept = default;

const Grid& SplitStepSolver::grid() const noexcept { return impl_->grid; }

void SplitStepSolver::step(WaveFunction& psi, double dt) {
    if (!(dt > 0.0 && std::isfinite(dt))) throw InvalidArgument("time step must be positive");
    if (psi.amplitudes.size() != impl_->grid.size()) throw InvalidArgument("wave function does not match solver grid");
    impl_->advance(psi, psi.t, dt);
    psi.t += dt;
}

void SplitStepSolver::evolve(WaveFunction& psi, double dt, std::size_t steps,
                             const std::function<void(const WaveFunction&)>& observer) {
    if (!(dt > 0.0 && std::isfinite(dt))) throw InvalidArgument("time step must be positive");
    if (psi.amplitudes.size() != impl_->grid.size()) throw InvalidArgument("wave function does not match solver grid");
    const double t0 = psi.t;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t_start = t0 + static_cast<double>(k) * dt;
        impl_->advance(psi, t_start, dt);
        psi.t = t0 + static_cast<double>(k + 1) * dt;
        if (observer) observer(psi);
    }
}

WaveFunction step(const PhysicalParams& params, const ForceProfile& profile, const WaveFunction& psi, double dt) {
    SplitStepSolver solver(params, profile, psi.grid);
    WaveFunction next = psi;
    solver.step(next, dt);
    return next;
}

void write_wavefunction_csv(std::ostream& out, const WaveFunction& psi) {
    out << "x,re,im,prob_density\n";
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
        const Complex z = psi.amplitudes[j];
        out << fmt::format("{},{},{},{}\n", psi.grid.x(j), z.real(), z.imag(), std::norm(z));
    }
}

}  // namespace qfho
