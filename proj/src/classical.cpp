#include "qfho/classical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "qfho/errors.hpp"

namespace qfho {

PhysicalParams::PhysicalParams(double mass_, double omega_, double hbar_) : mass(mass_), omega(omega_), hbar(hbar_) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mass)) throw InvalidArgument("mass must be positive and finite");
    if (!positive(omega)) throw InvalidArgument("omega must be positive and finite");
    if (!positive(hbar)) throw InvalidArgument("hbar must be positive and finite");
}

double lagrangian(const PhysicalParams& params, double lambda, double pi, double lambda_dot, double f) {
    const double m = params.mass;
    const double w = params.omega;
    return pi * pi / (2.0 * m) + 0.5 * m * w * w * lambda * lambda - f * lambda - pi * lambda_dot;
}

ClassicalState trajectory_rhs(const PhysicalParams& params, const ClassicalState& state, double f) {
    const double m = params.mass;
    const double w = params.omega;
    const double lambda_dot = state.pi / m;
    return {
        lambda_dot,
        f - m * w * w * state.lambda,
        lagrangian(params, state.lambda, state.pi, lambda_dot, f),
    };
}

Trajectory::Trajectory(PhysicalParams params, ForceProfile profile, double step, std::vector<TrajectoryPoint> samples)
    : params_(params), profile_(std::move(profile)), step_(step), samples_(std::move(samples)) {
    if (!(step_ > 0.0)) throw InvalidArgument("trajectory step must be positive");
    if (samples_.size() < 2) throw InvalidArgument("trajectory needs at least 2 samples");
}

TrajectoryPoint Trajectory::at(double t) const {
    const double end = horizon();
    const double slack = 1e-12 * std::max(1.0, end);
    if (!(t >= -slack && t <= end + slack)) throw TimeOutOfRange(t);
    t = std::clamp(t, 0.0, end);

    const std::size_t last = samples_.size() - 1;
    std::size_t k = static_cast<std::size_t>(std::floor(t / step_));
    k = std::min(k, last - 1);
    const TrajectoryPoint& a = samples_[k];
    const TrajectoryPoint& b = samples_[k + 1];
    if (t == a.t) return a;
    if (t == b.t) return b;

    const double width = b.t - a.t;
    const double s = (t - a.t) / width;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;

    const ClassicalState da = trajectory_rhs(params_, {a.lambda, a.pi, a.action}, profile_(a.t));
    const ClassicalState db = trajectory_rhs(params_, {b.lambda, b.pi, b.action}, profile_(b.t));
    auto hermite = [&](double ya, double dya, double yb, double dyb) {
        return h00 * ya + h10 * width * dya + h01 * yb + h11 * width * dyb;
    };
    return {
        t,
        hermite(a.lambda, da.lambda, b.lambda, db.lambda),
        hermite(a.pi, da.pi, b.pi, db.pi),
        hermite(a.action, da.action, b.action, db.action),
    };
}

Trajectory integrate_trajectory(const PhysicalParams& params, const ForceProfile& profile, double t_end, double h) {
    if (!(std::isfinite(t_end) && t_end > 0.0)) throw InvalidArgument("t_end must be positive and finite");
    if (!(std::isfinite(h) && h > 0.0)) throw InvalidArgument("step h must be positive and finite");
    if (h > t_end) throw InvalidArgument("step h must not exceed t_end");
    if (const auto domain = profile.domain()) {
        if (domain->first > 0.0) throw OutOfTableRange(0.0);
        if (domain->second < t_end) throw OutOfTableRange(t_end);
    }

    // Number of full steps; a remainder below 1e-9 h is treated as rounding.
    auto full = static_cast<std::size_t>(std::floor(t_end / h));
    if (t_end - static_cast<double>(full) * h < 1e-9 * h && full > 0) --full;

    std::vector<TrajectoryPoint> samples;
    samples.reserve(full + 2);
    samples.push_back({0.0, 0.0, 0.0, 0.0});

    ClassicalState y{};
    auto axpy = [](const ClassicalState& base, double a, const ClassicalState& d) {
        return ClassicalState{base.lambda + a * d.lambda, base.pi + a * d.pi, base.action + a * d.action};
    };

    for (std::size_t k = 0; k <= full; ++k) {
        const double t0 = static_cast<double>(k) * h;
        const double t1 = (k == full) ? t_end : static_cast<double>(k + 1) * h;
        const double dt = t1 - t0;
        if (dt <= 0.0) break;

        const double f_start = profile(t0);
        const double f_mid = profile(t0 + 0.5 * dt);
        const double f_end = profile(t1);

        const ClassicalState k1 = trajectory_rhs(params, y, f_start);
        const ClassicalState k2 = trajectory_rhs(params, axpy(y, 0.5 * dt, k1), f_mid);
        const ClassicalState k3 = trajectory_rhs(params, axpy(y, 0.5 * dt, k2), f_mid);
        const ClassicalState k4 = trajectory_rhs(params, axpy(y, dt, k3), f_end);

        y.lambda += dt / 6.0 * (k1.lambda + 2.0 * k2.lambda + 2.0 * k3.lambda + k4.lambda);
        y.pi += dt / 6.0 * (k1.pi + 2.0 * k2.pi + 2.0 * k3.pi + k4.pi);
        y.action += dt / 6.0 * (k1.action + 2.0 * k2.action + 2.0 * k3.action + k4.action);
        samples.push_back({t1, y.lambda, y.pi, y.action});
    }

    return Trajectory(params, profile, h, std::move(samples));
}

TrajectoryPoint closed_form_constant_force(const PhysicalParams& params, double f0, double t) {
    const double m = params.mass;
    const double w = params.omega;
    const double amplitude = f0 / (m * w * w);
    const double lambda = amplitude * (1.0 - std::cos(w * t));
    const double pi = f0 / w * std::sin(w * t);
    const double action = -(f0 * f0 / (m * w * w)) * (0.5 * t - std::sin(2.0 * w * t) / (4.0 * w));
    return {t, lambda, pi, action};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,lambda,pi,S\n";
    for (const auto& p : trajectory.samples())
        out << fmt::format("{},{},{},{}\n", p.t, p.lambda, p.pi, p.action);
}

}  // namespace qfho
