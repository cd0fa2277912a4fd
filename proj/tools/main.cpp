// qfho: forced quantum harmonic oscillator experiments.
//
//   qfho trajectory --config scenario.ini --out results/
//   qfho kernel     --config scenario.ini --q 0,1 --qp -1,0,1 [--t 1.5]
//   qfho compare    --config scenario.ini
//   qfho heisenberg --config scenario.ini
//
// Exit codes: 0 success, 1 usage or configuration error, 2 physics-domain
// error (caustic, boundary, coarse grid), 3 compare thresholds not met.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qfho/commands.hpp"
#include "qfho/errors.hpp"
#include "qfho/scenario.hpp"

namespace {

unsigned thread_budget() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QFHO_NUM_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) threads = std::min(threads, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed QFHO_NUM_THREADS='" << env << "'\n";
        }
    }
    return threads;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forced quantum harmonic oscillator: trajectories, propagator and grid validation"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    int seed = 0;
    bool quiet = false;
    app.add_option("--config", config, "Scenario file (INI)")->required();
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Reserved; no component is stochastic");
    app.add_flag("--quiet", quiet, "Suppress summary lines");
    app.fallthrough();

    auto* trajectory = app.add_subcommand("trajectory", "Integrate lambda, pi, S and write trajectory.csv");
    auto* kernel = app.add_subcommand("kernel", "Evaluate the Green's function and write kernel.csv");
    std::vector<double> q_values;
    std::vector<double> qp_values;
    std::optional<double> kernel_time;
    kernel->add_option("--q", q_values, "Final positions")->delimiter(',')->required();
    kernel->add_option("--qp", qp_values, "Initial positions")->delimiter(',')->required();
    kernel->add_option("--t", kernel_time, "Time (default schedule.t_end)");
    auto* compare = app.add_subcommand("compare", "Kernel evolution vs split-step oracle");
    auto* heisenberg = app.add_subcommand("heisenberg", "Write the symplectic map over time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qfho::kExitUsage;
    }

    qfho::RunOptions options;
    options.out_dir = out_dir;
    options.quiet = quiet;
    options.threads = thread_budget();

    try {
        const qfho::Scenario scenario = qfho::load_scenario(config);
        if (*trajectory) return qfho::run_trajectory(scenario, options);
        if (*kernel) return qfho::run_kernel(scenario, q_values, qp_values, kernel_time, options);
        if (*compare) return qfho::run_compare(scenario, options);
        if (*heisenberg) return qfho::run_heisenberg(scenario, options);
    } catch (const qfho::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfho::kExitDomain;
    } catch (const qfho::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfho::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfho::kExitUsage;
    }
    return qfho::kExitUsage;
}
