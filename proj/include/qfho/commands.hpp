#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qfho/scenario.hpp"

namespace qfho {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitThresholds = 3;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool quiet = false;
    unsigned threads = 1;
    std::ostream* log = nullptr;  // summary lines; nullptr means std::cout
};

/// Thresholds a `compare` run must meet at every kernel-admissible snapshot.
struct CompareThresholds {
    double fidelity_loss = 1e-6;   // 1 - |<psi_oracle|psi_kernel>|
    double phase = 1e-4;           // |arg <psi_oracle|psi_kernel>|, radians
    double kernel_norm = 1e-6;     // |norm - 1|
    double oracle_norm = 1e-12;    // |norm - 1|
    double mean = 1e-4;            // |<q>_oracle - <q>_map|, same for p
};

/// Writes trajectory.csv (`t,lambda,pi,S`).
int run_trajectory(const Scenario& scenario, const RunOptions& options);

/// Writes kernel.csv (`q,q_prime,t,re,im`) at time t, default schedule.t_end.
int run_kernel(const Scenario& scenario, const std::vector<double>& q_values,
               const std::vector<double>& q_prime_values, std::optional<double> t, const RunOptions& options);

/// Evolves the packet with the split-step oracle and with the kernel and writes
/// compare.csv (`t,fidelity,phase_error,norm_kernel,norm_oracle,q_mean_err,p_mean_err`),
/// oracle_log.csv (`t,norm,q_mean,p_mean,energy`) and the final states as
/// oracle_final.csv and kernel_final.csv. Returns kExitOk iff every threshold holds.
int run_compare(const Scenario& scenario, const RunOptions& options, const CompareThresholds& thresholds = {});

/// Writes heisenberg.csv (`t,M11,M12,M21,M22,xi_q,xi_p,detM`).
int run_heisenberg(const Scenario& scenario, const RunOptions& options);

}  // namespace qfho
