#pragma once

#include <array>

#include "qfho/classical.hpp"

namespace qfho {

/// Full parameter set of the evolution operator at time t.
/// theta = w t and delta = m w are closed forms; lambda, pi, S come from the trajectory.
struct EvolutionParams {
    double t = 0.0;
    double theta = 0.0;
    double delta = 1.0;
    double lambda = 0.0;
    double pi = 0.0;
    double action = 0.0;
};

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

/// Heisenberg-picture map (q, p) -> M (q, p) + xi.
struct SymplecticMap {
    std::array<std::array<double, 2>, 2> matrix{{{1.0, 0.0}, {0.0, 1.0}}};
    PhasePoint shift{};

    double determinant() const noexcept { return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]; }

    PhasePoint apply(const PhasePoint& x) const noexcept {
        return {matrix[0][0] * x.q + matrix[0][1] * x.p + shift.q, matrix[1][0] * x.q + matrix[1][1] * x.p + shift.p};
    }
};

/// Throws TimeOutOfRange when t is outside [0, trajectory horizon].
EvolutionParams evolution_params(const Trajectory& trajectory, double t);

/// M = [[cos theta, sin theta / delta], [-delta sin theta, cos theta]], xi = (lambda, pi).
SymplecticMap symplectic_map(const EvolutionParams& ep);

PhasePoint heisenberg_point(const SymplecticMap& map, double q, double p);

/// Means of q and p at time t given their means at t = 0. The map is affine,
/// so expectation values follow it exactly.
PhasePoint ehrenfest_expectations(const SymplecticMap& map, double q0_mean, double p0_mean);

}  // namespace qfho
