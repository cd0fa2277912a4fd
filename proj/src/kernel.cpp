#include "qfho/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "qfho/errors.hpp"

namespace qfho {

CausticSingular::CausticSingular(double angle)
    : DomainError(fmt::format("kernel evaluated at a caustic: angle = {:.17g}, "
                              "signed distance to nearest multiple of pi = {:.3g}",
                              angle,
                              std::remainder(angle, std::numbers::pi))),
      angle_(angle),
      angle_mod_pi_(std::remainder(angle, std::numbers::pi)) {}

namespace {

// Pieces of the harmonic kernel that depend only on the angle.
struct HarmonicCoefficients {
    Complex prefactor;  // sqrt(delta / (2 pi i hbar sin theta))
    double scale;       // delta / (2 hbar sin theta)
    double cos_theta;
};

HarmonicCoefficients harmonic_coefficients(const PhysicalParams& params, double theta, double delta) {
    check_caustic(theta);
    const double s = std::sin(theta);
    const Complex radicand = Complex(delta, 0.0) / Complex(0.0, 2.0 * std::numbers::pi * params.hbar * s);
    return {std::sqrt(radicand), delta / (2.0 * params.hbar * s), std::cos(theta)};
}

double harmonic_phase(const HarmonicCoefficients& c, double q_final, double q_initial) {
    return c.scale * ((q_initial * q_initial + q_final * q_final) * c.cos_theta - 2.0 * q_initial * q_final);
}

// Phase of the forced kernel at (q, q'), excluding the prefactor.
struct ForcedCoefficients {
    HarmonicCoefficients harmonic;
    double lambda;
    double momentum;  // pi / hbar
    double action;    // S / hbar

    double phase(double q, double q_initial) const {
        const double u = q - lambda;
        return -action + momentum * u + harmonic_phase(harmonic, u, q_initial);
    }
};

ForcedCoefficients forced_coefficients(const PhysicalParams& params, const EvolutionParams& ep) {
    return {harmonic_coefficients(params, ep.theta, ep.delta), ep.lambda, ep.pi / params.hbar,
            ep.action / params.hbar};
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void check_caustic(double theta) {
    if (!std::isfinite(theta) || std::abs(std::sin(theta)) < kCausticEpsilon) throw CausticSingular(theta);
}

Complex ho_kernel(const PhysicalParams& params, double q_final, double q_initial, double theta, double delta) {
    const HarmonicCoefficients c = harmonic_coefficients(params, theta, delta);
    return c.prefactor * std::polar(1.0, harmonic_phase(c, q_final, q_initial));
}

Complex forced_kernel(const PhysicalParams& params, const EvolutionParams& ep, double q, double q_initial) {
    const ForcedCoefficients c = forced_coefficients(params, ep);
    return c.harmonic.prefactor * std::polar(1.0, c.phase(q, q_initial));
}

void check_kernel_resolution(const PhysicalParams& params, const Grid& grid, double theta) {
    const double wavelength =
        2.0 * std::numbers::pi * params.hbar * std::abs(std::sin(theta)) / (params.mass * params.omega * grid.span());
    const double required = 4.0 * grid.spacing();
    if (wavelength < required)
        throw GridTooCoarse(fmt::format(
            "kernel wavelength {:.4g} spans fewer than 4 grid spacings ({:.4g}); refine the grid or shrink its span",
            wavelength, required));
}

WaveFunction evolve_by_kernel(const PhysicalParams& params, const EvolutionParams& ep, const WaveFunction& psi0,
                              const KernelOptions& options) {
    const ForcedCoefficients c = forced_coefficients(params, ep);
    check_kernel_resolution(params, psi0.grid, ep.theta);
    const double n0 = norm_squared(psi0);
    if (!(std::abs(n0 - 1.0) < 1e-6)) throw NotNormalized(n0);

    const Grid& grid = psi0.grid;
    const std::size_t n = grid.size();
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = grid.x(j);

    const Complex weight = c.harmonic.prefactor * grid.spacing();
    std::vector<Complex> out(n);
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Complex sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) sum += std::polar(1.0, c.phase(x[i], x[j])) * psi0.amplitudes[j];
            out[i] = weight * sum;
        }
    };

    const unsigned threads = std::min<std::size_t>(resolve_threads(options.threads), n);
    if (threads <= 1) {
        fill(0, n);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) workers.emplace_back(fill, begin, end);
        }
    }
    return WaveFunction(grid, std::move(out), psi0.t + ep.t);
}

WaveFunction evolve_composed(const PhysicalParams& params, const ForceProfile& profile, const WaveFunction& psi0,
                             const std::vector<double>& segment_ends, double h, const KernelOptions& options) {
    if (segment_ends.empty()) throw InvalidArgument("at least one segment is required");
    WaveFunction psi = psi0;
    double start = psi0.t;
    for (double end : segment_ends) {
        if (!(end > start)) throw InvalidArgument("segment end times must be strictly increasing");
        const double duration = end - start;
        const ForceProfile local = profile.shifted(start);
        const Trajectory trajectory = integrate_trajectory(params, local, duration, std::min(h, duration));
        const EvolutionParams ep = evolution_params(trajectory, duration);
        psi = evolve_by_kernel(params, ep, psi, options);
        psi.t = end;
        start = end;
    }
    return psi;
}

void write_kernel_csv(std::ostream& out, const PhysicalParams& params, const EvolutionParams& ep,
                      const std::vector<double>& q_values, const std::vector<double>& q_prime_values) {
    out << "q,q_prime,t,re,im\n";
    for (double q : q_values) {
        for (double qp : q_prime_values) {
            const Complex g = forced_kernel(params, ep, q, qp);
            out << fmt::format("{},{},{},{},{}\n", q, qp, ep.t, g.real(), g.imag());
        }
    }
}

}  // namespace qfho
