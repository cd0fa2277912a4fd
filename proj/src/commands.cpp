#include "qfho/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "qfho/errors.hpp"
#include "qfho/evolution.hpp"
#include "qfho/kernel.hpp"

namespace qfho {

namespace {

std::ostream& log_stream(const RunOptions& options) { return options.log ? *options.log : std::cout; }

std::ofstream open_output(const RunOptions& options, const std::string& name) {
    std::filesystem::create_directories(options.out_dir);
    const auto path = options.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
    return out;
}

std::string num(double v) { return fmt::format("{}", v); }

// Oracle step count: whole steps of dt, plus a shortened last step when
// t_end is not a multiple of dt.
struct StepPlan {
    std::size_t full = 0;
    double remainder = 0.0;
};

StepPlan plan_steps(double t_end, double dt) {
    auto full = static_cast<std::size_t>(std::floor(t_end / dt));
    double remainder = t_end - static_cast<double>(full) * dt;
    if (remainder < 1e-9 * dt) remainder = 0.0;
    if (remainder > dt * (1.0 - 1e-9)) {
        ++full;
        remainder = 0.0;
    }
    return {full, remainder};
}

std::vector<double> snapshot_times(const Schedule& schedule) {
    const StepPlan plan = plan_steps(schedule.t_end, schedule.dt);
    std::vector<double> times;
    for (std::size_t k = 0; k <= plan.full; k += schedule.stride) times.push_back(static_cast<double>(k) * schedule.dt);
    if (times.back() < schedule.t_end * (1.0 - 1e-12)) times.push_back(schedule.t_end);
    return times;
}

// Single-kernel evolution from t = 0 stays inside (0, pi/w).
void require_single_kernel_window(const PhysicalParams& params, double t) {
    const double theta = params.omega * t;
    check_caustic(theta);
    if (theta >= std::numbers::pi) throw CausticSingular(theta);
}

bool kernel_admissible(const PhysicalParams& params, const Grid& grid, double t) {
    try {
        require_single_kernel_window(params, t);
        check_kernel_resolution(params, grid, params.omega * t);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

}  // namespace

int run_trajectory(const Scenario& scenario, const RunOptions& options) {
    const Trajectory trajectory =
        integrate_trajectory(scenario.physical, scenario.force, scenario.schedule.t_end, scenario.schedule.h);
    auto out = open_output(options, "trajectory.csv");
    write_trajectory_csv(out, trajectory);
    if (!options.quiet) {
        const auto& last = trajectory.samples().back();
        log_stream(options) << fmt::format("trajectory: {} samples, t={} lambda={:.10g} pi={:.10g} S={:.10g}\n",
                                           trajectory.samples().size(), last.t, last.lambda, last.pi, last.action);
    }
    return kExitOk;
}

int run_kernel(const Scenario& scenario, const std::vector<double>& q_values,
               const std::vector<double>& q_prime_values, std::optional<double> t, const RunOptions& options) {
    if (q_values.empty() || q_prime_values.empty()) throw InvalidArgument("kernel needs at least one q and one q'");
    const double time = t.value_or(scenario.schedule.t_end);
    if (!(time > 0.0)) throw InvalidArgument("kernel time must be positive");
    check_caustic(scenario.physical.omega * time);

    const Trajectory trajectory =
        integrate_trajectory(scenario.physical, scenario.force, time, std::min(scenario.schedule.h, time));
    const EvolutionParams ep = evolution_params(trajectory, time);
    auto out = open_output(options, "kernel.csv");
    write_kernel_csv(out, scenario.physical, ep, q_values, q_prime_values);
    if (!options.quiet)
        log_stream(options) << fmt::format("kernel: {} x {} values at t={} (lambda={:.10g} pi={:.10g} S={:.10g})\n",
                                           q_values.size(), q_prime_values.size(), time, ep.lambda, ep.pi, ep.action);
    return kExitOk;
}

int run_heisenberg(const Scenario& scenario, const RunOptions& options) {
    const Trajectory trajectory =
        integrate_trajectory(scenario.physical, scenario.force, scenario.schedule.t_end, scenario.schedule.h);
    auto out = open_output(options, "heisenberg.csv");
    out << "t,M11,M12,M21,M22,xi_q,xi_p,detM\n";
    double worst = 0.0;
    for (double t : snapshot_times(scenario.schedule)) {
        const SymplecticMap map = symplectic_map(evolution_params(trajectory, t));
        const double det = map.determinant();
        worst = std::max(worst, std::abs(det - 1.0));
        out << fmt::format("{},{},{},{},{},{},{},{}\n", num(t), num(map.matrix[0][0]), num(map.matrix[0][1]),
                           num(map.matrix[1][0]), num(map.matrix[1][1]), num(map.shift.q), num(map.shift.p), num(det));
    }
    if (!options.quiet) log_stream(options) << fmt::format("heisenberg: max |det M - 1| = {:.3g}\n", worst);
    return kExitOk;
}

int run_compare(const Scenario& scenario, const RunOptions& options, const CompareThresholds& thresholds) {
    const PhysicalParams& params = scenario.physical;
    const Schedule& schedule = scenario.schedule;

    // Fail before any work if the final state cannot be reached by one kernel.
    require_single_kernel_window(params, schedule.t_end);
    check_kernel_resolution(params, scenario.grid, params.omega * schedule.t_end);

    const WaveFunction psi0 =
        make_gaussian(scenario.grid, scenario.packet.q0, scenario.packet.p0, scenario.packet.sigma, params.hbar);
    const double q0_mean = expectation_q(psi0);
    const double p0_mean = expectation_p(psi0, params.hbar);
    const Trajectory trajectory = integrate_trajectory(params, scenario.force, schedule.t_end, schedule.h);
    const KernelOptions kernel_options{options.threads};

    auto report = open_output(options, "compare.csv");
    auto run_log = open_output(options, "oracle_log.csv");
    report << "t,fidelity,phase_error,norm_kernel,norm_oracle,q_mean_err,p_mean_err\n";
    run_log << "t,norm,q_mean,p_mean,energy\n";

    bool pass = true;
    double worst_loss = 0.0;
    double worst_phase = 0.0;
    double worst_mean = 0.0;
    std::optional<WaveFunction> kernel_final;

    auto snapshot = [&](const WaveFunction& oracle, double t) {
        const double norm_oracle = std::sqrt(norm_squared(oracle));
        const double q_mean = expectation_q(oracle);
        const double p_mean = expectation_p(oracle, params.hbar);
        const double energy = expectation_energy(oracle, params, scenario.force(t));
        run_log << fmt::format("{},{},{},{},{}\n", num(t), num(norm_oracle), num(q_mean), num(p_mean), num(energy));

        const PhasePoint predicted =
            ehrenfest_expectations(symplectic_map(evolution_params(trajectory, t)), q0_mean, p0_mean);
        const double q_err = std::abs(q_mean - predicted.q);
        const double p_err = std::abs(p_mean - predicted.p);
        worst_mean = std::max({worst_mean, q_err, p_err});
        pass = pass && q_err < thresholds.mean && p_err < thresholds.mean &&
               std::abs(norm_oracle - 1.0) < thresholds.oracle_norm;

        const double nan = std::numeric_limits<double>::quiet_NaN();
        double fidelity = nan;
        double phase = nan;
        double norm_kernel = nan;
        std::optional<WaveFunction> kernel_state;
        if (t == 0.0) {
            kernel_state = psi0;
        } else if (kernel_admissible(params, scenario.grid, t)) {
            kernel_state = evolve_by_kernel(params, evolution_params(trajectory, t), psi0, kernel_options);
        }
        if (kernel_state) {
            const Complex o = overlap(oracle, *kernel_state);
            fidelity = std::abs(o);
            phase = std::arg(o);
            norm_kernel = std::sqrt(norm_squared(*kernel_state));
            worst_loss = std::max(worst_loss, 1.0 - fidelity);
            worst_phase = std::max(worst_phase, std::abs(phase));
            pass = pass && 1.0 - fidelity <= thresholds.fidelity_loss && std::abs(phase) < thresholds.phase &&
                   std::abs(norm_kernel - 1.0) <= thresholds.kernel_norm;
            kernel_final = std::move(kernel_state);
        }
        report << fmt::format("{},{},{},{},{},{},{}\n", num(t), num(fidelity), num(phase), num(norm_kernel),
                              num(norm_oracle), num(q_err), num(p_err));
    };

    SplitStepSolver solver(params, scenario.force, scenario.grid);
    WaveFunction oracle = psi0;
    const StepPlan plan = plan_steps(schedule.t_end, schedule.dt);
    snapshot(oracle, 0.0);
    std::size_t k = 0;
    solver.evolve(oracle, schedule.dt, plan.full, [&](const WaveFunction& psi) {
        ++k;
        const bool last = k == plan.full && plan.remainder == 0.0;
        if (last)
            snapshot(psi, schedule.t_end);
        else if (k % schedule.stride == 0)
            snapshot(psi, psi.t);
    });
    if (plan.remainder == 0.0) {
        oracle.t = schedule.t_end;
    } else {
        solver.step(oracle, plan.remainder);
        oracle.t = schedule.t_end;
        snapshot(oracle, oracle.t);
    }
    check_boundary(oracle);

    auto oracle_out = open_output(options, "oracle_final.csv");
    write_wavefunction_csv(oracle_out, oracle);
    if (kernel_final) {
        auto kernel_out = open_output(options, "kernel_final.csv");
        write_wavefunction_csv(kernel_out, *kernel_final);
    }

    if (!options.quiet)
        log_stream(options) << fmt::format(
            "compare: {} t_end={} max(1-fidelity)={:.3g} max|phase|={:.3g} max mean err={:.3g}\n",
            pass ? "PASS" : "FAIL", schedule.t_end, worst_loss, worst_phase, worst_mean);
    return pass ? kExitOk : kExitThresholds;
}

}  // namespace qfho
