#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qfho/expression.hpp"

namespace qfho {

namespace force {

struct Zero {};

struct Constant {
    double f0 = 0.0;
};

// f0 sin(omega t + phase)
struct Sinusoid {
    double f0 = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

// f0 exp(-(t - t0)^2 / (2 sigma^2)), sigma > 0
struct GaussianPulse {
    double f0 = 0.0;
    double t0 = 0.0;
    double sigma = 1.0;
};

struct Sample {
    double t = 0.0;
    double f = 0.0;
};

// Piecewise-linear table. Samples strictly increasing in t, at least two.
struct Tabulated {
    std::vector<Sample> samples;
};

struct Parsed {
    Expression expression;
};

}  // namespace force

/// Driving force f(t).
///
/// A profile may carry a time offset so that a segment starting at t1 can be
/// integrated from its own local t = 0: the shifted profile evaluates the
/// original at t + offset.
class ForceProfile {
public:
    using Variant = std::variant<force::Zero, force::Constant, force::Sinusoid, force::GaussianPulse,
                                 force::Tabulated, force::Parsed>;

    ForceProfile() = default;
    /// Validates the variant's invariants; throws InvalidArgument.
    ForceProfile(Variant variant);  // NOLINT(google-explicit-constructor)

    static ForceProfile zero() { return ForceProfile(force::Zero{}); }
    static ForceProfile constant(double f0) { return ForceProfile(force::Constant{f0}); }
    static ForceProfile sinusoid(double f0, double omega, double phase = 0.0) {
        return ForceProfile(force::Sinusoid{f0, omega, phase});
    }
    static ForceProfile gaussian_pulse(double f0, double t0, double sigma) {
        return ForceProfile(force::GaussianPulse{f0, t0, sigma});
    }
    static ForceProfile tabulated(std::vector<force::Sample> samples) {
        return ForceProfile(force::Tabulated{std::move(samples)});
    }
    static ForceProfile expression(Expression e) { return ForceProfile(force::Parsed{std::move(e)}); }
    static ForceProfile expression(std::string_view text) { return expression(parse_force_expression(text)); }

    /// Force at t. Throws OutOfTableRange for tables and EvalDomainError for expressions.
    double operator()(double t) const;

    /// Profile whose local time 0 corresponds to this profile's time `by`.
    ForceProfile shifted(double by) const;

    /// Closed interval of valid evaluation times, if the profile is bounded in time.
    std::optional<std::pair<double, double>> domain() const;

    /// Expression text equivalent to this profile, or nullopt when the
    /// profile is not expressible in the grammar (tables).
    std::optional<std::string> render() const;

    const Variant& variant() const noexcept { return variant_; }
    double time_offset() const noexcept { return offset_; }

private:
    Variant variant_ = force::Zero{};
    double offset_ = 0.0;
};

inline double eval_force(const ForceProfile& profile, double t) { return profile(t); }

}  // namespace qfho
