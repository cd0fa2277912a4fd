#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "qfho/errors.hpp"
#include "qfho/kernel.hpp"
#include "test_support.hpp"

using namespace qfho;
using qfho::testing::kPi;
using qfho::testing::max_abs_difference;

namespace {

const Grid kReference(-20.0, 20.0, 2048);

WaveFunction oracle_evolve(const PhysicalParams& params, const ForceProfile& f, WaveFunction psi, double t_end,
                           double dt) {
    SplitStepSolver solver(params, f, psi.grid);
    const auto steps = static_cast<std::size_t>(std::floor(t_end / dt));
    solver.evolve(psi, dt, steps);
    if (const double rest = t_end - psi.t; rest > 1e-12) solver.step(psi, rest);
    psi.t = t_end;
    return psi;
}

}  // namespace

TEST_CASE("harmonic kernel is symmetric") {
    const PhysicalParams params(1.3, 0.7, 0.9);
    for (double theta : {0.3, 1.2, 2.9})
        for (double a : {-2.0, 0.1, 1.7})
            for (double b : {-0.4, 0.0, 3.3})
                CHECK(ho_kernel(params, a, b, theta, 0.91) == ho_kernel(params, b, a, theta, 0.91));
}

TEST_CASE("harmonic kernel spot value at a quarter period") {
    const PhysicalParams unit(1.0, 1.0, 1.0);
    const Complex value = ho_kernel(unit, 0.0, 0.0, kPi / 2.0, 1.0);
    // sqrt(1 / (2 pi i)) on the principal branch
    const Complex expected = std::polar(1.0 / std::sqrt(2.0 * kPi), -kPi / 4.0);
    CHECK(std::abs(value - expected) < 1e-15);
}

TEST_CASE("harmonic kernel tends to the identity as theta -> 0+") {
    const PhysicalParams unit(1.0, 1.0, 1.0);
    const Grid fine(-10.0, 10.0, 8192);
    auto g = [](double x) { return std::exp(-(x - 0.3) * (x - 0.3) / 2.0); };
    auto error_at = [&](double theta) {
        double worst = 0.0;
        for (double target : {-1.0, 0.0, 0.3, 1.2}) {
            Complex sum = 0.0;
            for (std::size_t j = 0; j < fine.size(); ++j)
                sum += ho_kernel(unit, target, fine.x(j), theta, 1.0) * g(fine.x(j));
            worst = std::max(worst, std::abs(sum * fine.spacing() - g(target)));
        }
        return worst;
    };
    const double e1 = error_at(0.1);
    const double e2 = error_at(0.05);
    const double e3 = error_at(0.025);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(e3 < 0.03);
}

TEST_CASE("caustics are refused") {
    const PhysicalParams unit(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(ho_kernel(unit, 0.0, 0.0, 0.0, 1.0), CausticSingular);
    CHECK_THROWS_AS(ho_kernel(unit, 0.0, 0.0, kPi, 1.0), CausticSingular);
    CHECK_THROWS_AS(ho_kernel(unit, 0.0, 0.0, 5e-7, 1.0), CausticSingular);
    CHECK_NOTHROW(ho_kernel(unit, 0.0, 0.0, 2e-6, 1.0));
    try {
        EvolutionParams ep;
        ep.theta = 2.0 * kPi + 1e-9;
        forced_kernel(unit, ep, 0.0, 0.0);
        FAIL("expected CausticSingular");
    } catch (const CausticSingular& e) {
        CHECK(std::abs(e.angle_mod_pi()) < 1e-8);
    }
}

TEST_CASE("zero force reduces the forced kernel to the harmonic kernel") {
    const PhysicalParams params(1.4, 0.8, 1.1);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::zero(), 3.0, 0.01);
    for (double t : {0.4, 1.7, 2.9}) {
        const EvolutionParams ep = evolution_params(trajectory, t);
        for (double q = -3.0; q <= 3.0; q += 0.75)
            for (double qp = -3.0; qp <= 3.0; qp += 0.75)
                CHECK(forced_kernel(params, ep, q, qp) ==
                      ho_kernel(params, q, qp, params.omega * t, params.mass * params.omega));
    }
}

TEST_CASE("translated kernel spot value with pi = 0") {
    // lambda, pi, S of the constant-force oracle at t = pi/w, placed on a non-caustic angle.
    const PhysicalParams unit(1.0, 1.0, 1.0);
    const TrajectoryPoint at_half_period = closed_form_constant_force(unit, 1.0, kPi);
    EvolutionParams ep;
    ep.theta = kPi / 3.0;
    ep.delta = 1.0;
    ep.lambda = 2.0;
    ep.pi = 0.0;
    ep.action = at_half_period.action;
    CHECK(ep.action == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
    for (double q : {-1.0, 0.5, 2.0, 3.5})
        for (double qp : {-0.5, 0.0, 1.0}) {
            const Complex expected = std::polar(1.0, -ep.action) * ho_kernel(unit, q - 2.0, qp, kPi / 3.0, 1.0);
            CHECK(std::abs(forced_kernel(unit, ep, q, qp) - expected) < 1e-14);
        }
}

TEST_CASE("forced kernel is unitary on a smeared Gaussian") {
    const PhysicalParams unit(1.0, 1.0, 1.0);
    const Trajectory trajectory = integrate_trajectory(unit, ForceProfile::sinusoid(0.5, 0.8), 2.0, 1e-3);
    const EvolutionParams ep = evolution_params(trajectory, 2.0);
    const WaveFunction g = make_gaussian(kReference, 0.7, 0.4, 1.0, 1.0);
    const WaveFunction forward = evolve_by_kernel(unit, ep, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < kReference.size(); i += 37) {
        const double q1 = kReference.x(i);
        Complex back = 0.0;
        for (std::size_t j = 0; j < kReference.size(); ++j)
            back += std::conj(forced_kernel(unit, ep, kReference.x(j), q1)) * forward.amplitudes[j];
        worst = std::max(worst, std::abs(back * kReference.spacing() - g.amplitudes[i]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("coherent state oscillates without spreading") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const double sigma = std::sqrt(params.hbar / (2.0 * params.mass * params.omega));
    const WaveFunction psi0 = make_gaussian(kReference, 1.0, 0.0, sigma, params.hbar);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::zero(), 3.0, 0.01);
    for (double t : {0.7, 1.5, 2.6}) {
        const WaveFunction psi = evolve_by_kernel(params, evolution_params(trajectory, t), psi0);
        const double q_mean = expectation_q(psi);
        CHECK(q_mean == doctest::Approx(std::cos(params.omega * t)).epsilon(1e-9));
        double variance = 0.0;
        for (std::size_t j = 0; j < kReference.size(); ++j)
            variance += std::pow(kReference.x(j) - q_mean, 2) * std::norm(psi.amplitudes[j]);
        variance *= kReference.spacing();
        CHECK(variance == doctest::Approx(sigma * sigma).epsilon(1e-9));

        const WaveFunction oracle = oracle_evolve(params, ForceProfile::zero(), psi0, t, 1e-3);
        CHECK(1.0 - std::abs(overlap(oracle, psi)) < 1e-9);
    }
}

TEST_CASE("short-time kernel evolution is close to the identity") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const Grid compact(-6.0, 6.0, 2048);
    const WaveFunction psi0 = make_gaussian(compact, 0.2, 0.0, 0.5, 1.0);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::constant(0.3), 0.05, 1e-3);
    const WaveFunction psi = evolve_by_kernel(params, evolution_params(trajectory, 0.05), psi0);
    CHECK(std::abs(overlap(psi0, psi)) >= 0.999);
    CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-6);
}

TEST_CASE("resonant drive over one period composes sub-caustic segments") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const ForceProfile drive = ForceProfile::sinusoid(0.5, 1.0);
    const double period = 2.0 * kPi;
    const WaveFunction psi0 = make_gaussian(kReference, 1.0, 0.0, 1.0 / std::sqrt(2.0), 1.0);
    const WaveFunction psi = evolve_composed(params, drive, psi0, {period / 3.0, 2.0 * period / 3.0, period}, 1e-3);
    CHECK(psi.t == period);

    const double lambda = qfho::testing::resonant_lambda(1.0, 1.0, 0.5, period);
    const double pi = qfho::testing::resonant_pi(1.0, 1.0, 0.5, period);
    CHECK(expectation_q(psi) == doctest::Approx(1.0 + lambda).epsilon(1e-8));
    CHECK(std::abs(expectation_p(psi, 1.0) - pi) < 1e-8);

    const WaveFunction oracle = oracle_evolve(params, drive, psi0, period, 1e-3);
    CHECK(1.0 - std::abs(overlap(oracle, psi)) < 1e-6);
}

TEST_CASE("kernel evolution preserves the norm on the reference grid") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::sinusoid(0.5, 0.8), 2.5, 1e-3);
    const WaveFunction psi0 = make_gaussian(kReference, 1.0, 0.0, 1.0 / std::sqrt(2.0), 1.0);
    const WaveFunction psi = evolve_by_kernel(params, evolution_params(trajectory, 2.5), psi0);
    CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-6);
    CHECK(psi.t == 2.5);
}

TEST_CASE("evolve_by_kernel guards") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::zero(), 4.0, 1e-2);
    const WaveFunction psi0 = make_gaussian(kReference, 0.0, 0.0, 1.0, 1.0);
    CHECK_THROWS_AS(evolve_by_kernel(params, evolution_params(trajectory, 0.05), psi0), GridTooCoarse);
    CHECK_THROWS_AS(evolve_by_kernel(params, evolution_params(trajectory, kPi), psi0), CausticSingular);
    CHECK_THROWS_AS(evolve_by_kernel(params, evolution_params(trajectory, 0.0), psi0), CausticSingular);

    WaveFunction doubled = psi0;
    for (Complex& z : doubled.amplitudes) z *= 2.0;
    CHECK_THROWS_AS(evolve_by_kernel(params, evolution_params(trajectory, 1.0), doubled), NotNormalized);

    CHECK_THROWS_AS(evolve_composed(params, ForceProfile::zero(), psi0, {1.0, 0.5}, 0.01), InvalidArgument);
    CHECK_THROWS_AS(evolve_composed(params, ForceProfile::zero(), psi0, {}, 0.01), InvalidArgument);
}

TEST_CASE("parallel evaluation is bit-identical") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    const Trajectory trajectory = integrate_trajectory(params, ForceProfile::sinusoid(0.5, 0.8), 1.0, 1e-3);
    const Grid grid(-10.0, 10.0, 512);
    const WaveFunction psi0 = make_gaussian(grid, 1.0, 0.0, 0.7, 1.0);
    const EvolutionParams ep = evolution_params(trajectory, 1.0);
    const WaveFunction serial = evolve_by_kernel(params, ep, psi0, {1});
    const WaveFunction parallel = evolve_by_kernel(params, ep, psi0, {3});
    CHECK(max_abs_difference(serial, parallel) == 0.0);
}

TEST_CASE("kernel CSV") {
    const PhysicalParams params(1.0, 1.0, 1.0);
    EvolutionParams ep;
    ep.t = 1.0;
    ep.theta = 1.0;
    std::ostringstream out;
    write_kernel_csv(out, params, ep, {0.0, 1.0}, {-1.0, 0.0, 1.0});
    const std::string text = out.str();
    CHECK(text.rfind("q,q_prime,t,re,im\n0,-1,1,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}
