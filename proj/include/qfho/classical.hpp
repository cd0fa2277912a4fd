#pragma once

#include <iosfwd>
#include <vector>

#include "qfho/force.hpp"

namespace qfho {

/// Mass, angular frequency and reduced Planck constant; all positive and finite.
struct PhysicalParams {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;

    PhysicalParams() = default;
    PhysicalParams(double mass, double omega, double hbar);
};

/// Classical transformation parameters at time t: position shift lambda,
/// momentum shift pi and accumulated action S.
struct TrajectoryPoint {
    double t = 0.0;
    double lambda = 0.0;
    double pi = 0.0;
    double action = 0.0;
};

struct ClassicalState {
    double lambda = 0.0;
    double pi = 0.0;
    double action = 0.0;
};

/// L = pi^2/(2m) + m w^2 lambda^2 / 2 - f lambda - pi lambda_dot.
///
/// This is the Lagrangian that appears when the translation removes the
/// linear force term. On shell (pi = m lambda_dot) it equals minus the usual
/// classical Lagrangian, so the kernel phase exp(-iS/hbar) is exp(+iS_cl/hbar).
double lagrangian(const PhysicalParams& params, double lambda, double pi, double lambda_dot, double f);

/// (lambda_dot, pi_dot, S_dot) = (pi/m, f - m w^2 lambda, L).
ClassicalState trajectory_rhs(const PhysicalParams& params, const ClassicalState& state, double f);

/// Uniformly sampled solution of the parameter equations starting from rest.
///
/// Samples sit at t = k h; when t_end is not a multiple of h the last sample
/// is at t_end after a shortened final step.
class Trajectory {
public:
    Trajectory(PhysicalParams params, ForceProfile profile, double step, std::vector<TrajectoryPoint> samples);

    const PhysicalParams& params() const noexcept { return params_; }
    const ForceProfile& profile() const noexcept { return profile_; }
    double step() const noexcept { return step_; }
    double horizon() const noexcept { return samples_.back().t; }
    const std::vector<TrajectoryPoint>& samples() const noexcept { return samples_; }

    /// Cubic Hermite interpolation on (lambda, pi, S) using derivatives from
    /// trajectory_rhs. Exact at sample times. Throws TimeOutOfRange.
    TrajectoryPoint at(double t) const;

private:
    PhysicalParams params_;
    ForceProfile profile_;
    double step_;
    std::vector<TrajectoryPoint> samples_;
};

/// Classical fourth-order Runge-Kutta from lambda = pi = S = 0 with fixed step h.
/// The action is integrated as a third state component.
Trajectory integrate_trajectory(const PhysicalParams& params, const ForceProfile& profile, double t_end, double h);

/// Analytic solution for constant force f0:
///   lambda = f0/(m w^2) (1 - cos wt),  pi = (f0/w) sin wt,
///   S      = -(f0^2/(m w^2)) (t/2 - sin(2wt)/(4w)).
TrajectoryPoint closed_form_constant_force(const PhysicalParams& params, double f0, double t);

/// CSV with header `t,lambda,pi,S` at 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace qfho
