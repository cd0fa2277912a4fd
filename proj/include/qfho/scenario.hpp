#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "qfho/classical.hpp"
#include "qfho/force.hpp"
#include "qfho/grid.hpp"

namespace qfho {

struct PacketSpec {
    double q0 = 0.0;
    double p0 = 0.0;
    double sigma = 1.0;
};

struct Schedule {
    double t_end = 1.0;
    double dt = 1e-3;         // oracle time step, also the default trajectory step
    double h = 1e-3;          // trajectory step
    std::size_t stride = 1;   // snapshot every `stride` oracle steps
};

/// One experiment: everything the subcommands need, validated on load.
struct Scenario {
    PhysicalParams physical;
    ForceProfile force;
    std::string force_description;
    Grid grid{-20.0, 20.0, 2048};
    PacketSpec packet;
    Schedule schedule;
};

/// Reads an INI-style scenario with sections [physical], [force], [grid],
/// [packet] and [schedule]. Relative table paths resolve against the
/// scenario file's directory. Throws ConfigError naming the offending
/// `section.key`.
Scenario load_scenario(const std::filesystem::path& path);

/// Same as load_scenario, from in-memory text.
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = ".");

/// Reads a two-column `t,f` CSV (header optional).
ForceProfile load_force_table(const std::filesystem::path& path);

}  // namespace qfho
