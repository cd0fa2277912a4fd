#include "qfho/force.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qfho/errors.hpp"

namespace qfho {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidArgument(fmt::format("force parameter {} must be finite", what));
}

void validate(const ForceProfile::Variant& variant) {
    std::visit(overloaded{
                   [](const force::Zero&) {},
                   [](const force::Constant& c) { require_finite(c.f0, "f0"); },
                   [](const force::Sinusoid& s) {
                       require_finite(s.f0, "f0");
                       require_finite(s.omega, "omega");
                       require_finite(s.phase, "phase");
                   },
                   [](const force::GaussianPulse& g) {
                       require_finite(g.f0, "f0");
                       require_finite(g.t0, "t0");
                       if (!(g.sigma > 0.0) || !std::isfinite(g.sigma))
                           throw InvalidArgument("gaussian pulse width sigma must be positive");
                   },
                   [](const force::Tabulated& table) {
                       if (table.samples.size() < 2)
                           throw InvalidArgument("force table needs at least 2 samples");
                       for (std::size_t i = 0; i < table.samples.size(); ++i) {
                           require_finite(table.samples[i].t, "table t");
                           require_finite(table.samples[i].f, "table f");
                           if (i > 0 && !(table.samples[i].t > table.samples[i - 1].t))
                               throw InvalidArgument(
                                   fmt::format("force table times must be strictly increasing (row {})", i));
                       }
                   },
                   [](const force::Parsed&) {},
               },
               variant);
}

double interpolate(const force::Tabulated& table, double t) {
    const auto& s = table.samples;
    const double first = s.front().t;
    const double last = s.back().t;
    // Absorb rounding in stage times computed as t_k + h.
    const double slack = 1e-12 * std::max(1.0, last - first);
    if (!(t >= first - slack && t <= last + slack)) throw OutOfTableRange(t);
    t = std::clamp(t, first, last);

    auto upper = std::upper_bound(s.begin(), s.end(), t, [](double x, const force::Sample& p) { return x < p.t; });
    if (upper == s.end()) return s.back().f;
    if (upper == s.begin()) return s.front().f;
    const auto lower = upper - 1;
    const double w = (t - lower->t) / (upper->t - lower->t);
    return lower->f + w * (upper->f - lower->f);
}

}  // namespace

ForceProfile::ForceProfile(Variant variant) : variant_(std::move(variant)) { validate(variant_); }

double ForceProfile::operator()(double t) const {
    const double local = t + offset_;
    return std::visit(overloaded{
                          [](const force::Zero&) { return 0.0; },
                          [](const force::Constant& c) { return c.f0; },
                          [local](const force::Sinusoid& s) { return s.f0 * std::sin(s.omega * local + s.phase); },
                          [local](const force::GaussianPulse& g) {
                              const double d = local - g.t0;
                              return g.f0 * std::exp(-d * d / (2.0 * g.sigma * g.sigma));
                          },
                          [local](const force::Tabulated& table) { return interpolate(table, local); },
                          [local](const force::Parsed& p) { return p.expression.evaluate(local); },
                      },
                      variant_);
}

ForceProfile ForceProfile::shifted(double by) const {
    if (!std::isfinite(by)) throw InvalidArgument("time shift must be finite");
    ForceProfile copy = *this;
    copy.offset_ += by;
    return copy;
}

std::optional<std::pair<double, double>> ForceProfile::domain() const {
    if (const auto* table = std::get_if<force::Tabulated>(&variant_))
        return std::pair{table->samples.front().t - offset_, table->samples.back().t - offset_};
    return std::nullopt;
}

std::optional<std::string> ForceProfile::render() const {
    const std::string t = offset_ == 0.0 ? std::string("t") : fmt::format("(t + {})", offset_);
    return std::visit(
        overloaded{
            [](const force::Zero&) -> std::optional<std::string> { return "0"; },
            [](const force::Constant& c) -> std::optional<std::string> { return fmt::format("({})", c.f0); },
            [&t](const force::Sinusoid& s) -> std::optional<std::string> {
                return fmt::format("({}) * sin(({}) * {} + ({}))", s.f0, s.omega, t, s.phase);
            },
            [&t](const force::GaussianPulse& g) -> std::optional<std::string> {
                return fmt::format("({}) * exp(-({} - ({}))^2 / (2 * ({})^2))", g.f0, t, g.t0, g.sigma);
            },
            [](const force::Tabulated&) -> std::optional<std::string> { return std::nullopt; },
            [this](const force::Parsed& p) -> std::optional<std::string> {
                if (offset_ == 0.0) return p.expression.render();
                return std::nullopt;
            },
        },
        variant_);
}

}  // namespace qfho
