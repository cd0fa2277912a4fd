#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qfho/classical.hpp"
#include "qfho/evolution.hpp"
#include "qfho/force.hpp"
#include "qfho/grid.hpp"

namespace qfho {

/// |sin theta| below this is treated as a caustic.
inline constexpr double kCausticEpsilon = 1e-6;

/// Throws CausticSingular when |sin theta| < kCausticEpsilon.
void check_caustic(double theta);

/// Harmonic-oscillator kernel
///   sqrt(delta / (2 pi i hbar sin theta))
///     * exp[i delta / (2 hbar sin theta) ((q'^2 + q''^2) cos theta - 2 q' q'')].
/// Principal-branch square root, which is the correct branch for 0 < theta < pi.
Complex ho_kernel(const PhysicalParams& params, double q_final, double q_initial, double theta, double delta);

/// Forced-oscillator Green's function G(q, q'; t, 0):
///   exp(-iS/hbar) exp(i pi (q - lambda) / hbar) ho_kernel(q - lambda, q', w t, m w).
Complex forced_kernel(const PhysicalParams& params, const EvolutionParams& ep, double q, double q_initial);

struct KernelOptions {
    /// Worker threads for the map over output points; 0 means hardware concurrency.
    unsigned threads = 1;
};

/// Resolution guard for the oscillatory quadrature: the kernel's shortest
/// wavelength over the grid, 2 pi hbar |sin theta| / (m w span), must cover
/// at least 4 grid spacings. Throws GridTooCoarse.
void check_kernel_resolution(const PhysicalParams& params, const Grid& grid, double theta);

/// psi(q_i) = sum_j G(q_i, x_j; t) psi0(x_j) dx on psi0's grid.
/// Requires a normalized psi0 and a sub-caustic angle.
WaveFunction evolve_by_kernel(const PhysicalParams& params, const EvolutionParams& ep, const WaveFunction& psi0,
                              const KernelOptions& options = {});

/// Evolves psi0 through consecutive segments ending at the given times
/// (strictly increasing, all > psi0.t). Each segment uses its own trajectory
/// integrated with step h for the force shifted to the segment start, so the
/// kernel of every segment starts from rest at local time zero. Segments
/// must each stay inside a caustic-free window.
WaveFunction evolve_composed(const PhysicalParams& params, const ForceProfile& profile, const WaveFunction& psi0,
                             const std::vector<double>& segment_ends, double h, const KernelOptions& options = {});

/// CSV `q,q_prime,t,re,im` over the Cartesian product of q_values and q_prime_values.
void write_kernel_csv(std::ostream& out, const PhysicalParams& params, const EvolutionParams& ep,
                      const std::vector<double>& q_values, const std::vector<double>& q_prime_values);

}  // namespace qfho
