#include "qfho/evolution.hpp"

#include <cmath>

namespace qfho {

EvolutionParams evolution_params(const Trajectory& trajectory, double t) {
    const TrajectoryPoint point = trajectory.at(t);
    const PhysicalParams& params = trajectory.params();
    return {t, params.omega * t, params.mass * params.omega, point.lambda, point.pi, point.action};
}

SymplecticMap symplectic_map(const EvolutionParams& ep) {
    const double c = std::cos(ep.theta);
    const double s = std::sin(ep.theta);
    SymplecticMap map;
    map.matrix = {{{c, s / ep.delta}, {-ep.delta * s, c}}};
    map.shift = {ep.lambda, ep.pi};
    return map;
}

PhasePoint heisenberg_point(const SymplecticMap& map, double q, double p) { return map.apply({q, p}); }

PhasePoint ehrenfest_expectations(const SymplecticMap& map, double q0_mean, double p0_mean) {
    return map.apply({q0_mean, p0_mean});
}

}  // namespace qfho
