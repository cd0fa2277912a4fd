#include "qfho/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "qfho/errors.hpp"

namespace qfho {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"physical", {"mass", "omega", "hbar"}},
        {"force", {"type", "f0", "omega", "phase", "t0", "sigma", "path", "expr"}},
        {"grid", {"x_min", "x_max", "n"}},
        {"packet", {"q0", "p0", "sigma"}},
        {"schedule", {"t_end", "dt", "h", "stride"}},
    };
    return keys;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& field, const std::string& raw) {
    const std::string text = trim(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError(field, fmt::format("'{}' is not a number", raw));
    if (!std::isfinite(value)) throw ConfigError(field, "must be finite");
    return value;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {
        for (const auto& [section, body] : tree_) {
            const auto known = known_keys().find(section);
            if (known == known_keys().end()) throw ConfigError(section, "unknown section");
            for (const auto& [key, value] : body) {
                if (!known->second.contains(key)) throw ConfigError(section + "." + key, "unknown key");
            }
        }
    }

    bool has(const std::string& field) const { return tree_.get_optional<std::string>(pt::ptree::path_type(field, '.')).has_value(); }

    std::string text(const std::string& field) const {
        const auto value = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'));
        if (!value) throw ConfigError(field, "is required");
        return trim(*value);
    }

    double number(const std::string& field) const { return to_double(field, text(field)); }

    double number(const std::string& field, double fallback) const {
        return has(field) ? number(field) : fallback;
    }

    double positive(const std::string& field) const {
        const double v = number(field);
        if (!(v > 0.0)) throw ConfigError(field, "must be positive");
        return v;
    }

    double positive(const std::string& field, double fallback) const {
        return has(field) ? positive(field) : fallback;
    }

    std::size_t count(const std::string& field, std::size_t fallback) const {
        if (!has(field)) return fallback;
        const std::string t = text(field);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || value == 0)
            throw ConfigError(field, fmt::format("'{}' is not a positive integer", t));
        return value;
    }

private:
    const pt::ptree& tree_;
};

template <class F>
auto wrap(const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const SyntaxError& e) {
        throw ConfigError(field, e.what());
    } catch (const UnknownIdentifier& e) {
        throw ConfigError(field, e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(field, e.what());
    }
}

ForceProfile read_force(const Reader& r, const std::filesystem::path& base_dir, std::string& description) {
    const std::string type = r.has("force.type") ? r.text("force.type") : "zero";
    description = type;
    if (type == "zero") return ForceProfile::zero();
    if (type == "constant") return ForceProfile::constant(r.number("force.f0"));
    if (type == "sinusoid")
        return wrap("force", [&] {
            return ForceProfile::sinusoid(r.number("force.f0"), r.number("force.omega"), r.number("force.phase", 0.0));
        });
    if (type == "gaussian")
        return wrap("force.sigma", [&] {
            return ForceProfile::gaussian_pulse(r.number("force.f0"), r.number("force.t0"), r.positive("force.sigma"));
        });
    if (type == "table") {
        std::filesystem::path path = r.text("force.path");
        if (path.is_relative()) path = base_dir / path;
        description = "table:" + path.string();
        return wrap("force.path", [&] { return load_force_table(path); });
    }
    if (type == "expression") {
        const std::string expr = r.text("force.expr");
        description = "expression:" + expr;
        return wrap("force.expr", [&] { return ForceProfile::expression(expr); });
    }
    throw ConfigError("force.type", fmt::format("unknown force type '{}' (zero, constant, sinusoid, gaussian, "
                                                "table, expression)",
                                                type));
}

}  // namespace

ForceProfile load_force_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument(fmt::format("cannot open force table '{}'", path.string()));
    std::vector<force::Sample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument(fmt::format("{}:{}: expected 't,f'", path.string(), line_no));
        const std::string t_text = trim(line.substr(0, comma));
        const std::string f_text = trim(line.substr(comma + 1));
        double t = 0.0;
        double f = 0.0;
        const auto rt = std::from_chars(t_text.data(), t_text.data() + t_text.size(), t);
        const auto rf = std::from_chars(f_text.data(), f_text.data() + f_text.size(), f);
        const bool ok = rt.ec == std::errc{} && rt.ptr == t_text.data() + t_text.size() && rf.ec == std::errc{} &&
                        rf.ptr == f_text.data() + f_text.size() && !t_text.empty() && !f_text.empty();
        if (!ok) {
            if (samples.empty() && line_no == 1) continue;  // header
            throw InvalidArgument(fmt::format("{}:{}: malformed row '{}'", path.string(), line_no, line));
        }
        samples.push_back({t, f});
    }
    return ForceProfile::tabulated(std::move(samples));
}

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("scenario", fmt::format("line {}: {}", e.line(), e.message()));
    }
    const Reader r(tree);

    Scenario s;
    s.physical = wrap("physical", [&] {
        return PhysicalParams(r.positive("physical.mass", 1.0), r.positive("physical.omega", 1.0),
                              r.positive("physical.hbar", 1.0));
    });
    s.force = read_force(r, base_dir, s.force_description);

    const double x_min = r.number("grid.x_min", -20.0);
    const double x_max = r.number("grid.x_max", 20.0);
    const std::size_t n = r.count("grid.n", 2048);
    s.grid = wrap("grid", [&] { return Grid(x_min, x_max, n); });

    s.packet.q0 = r.number("packet.q0", 0.0);
    s.packet.p0 = r.number("packet.p0", 0.0);
    s.packet.sigma = r.positive("packet.sigma", 1.0 / std::sqrt(2.0));
    if (s.packet.q0 - 6.0 * s.packet.sigma < x_min || s.packet.q0 + 6.0 * s.packet.sigma > x_max)
        throw ConfigError("packet.q0", "packet must sit at least 6 sigma inside the grid");

    s.schedule.t_end = r.positive("schedule.t_end");
    s.schedule.dt = r.positive("schedule.dt", 1e-3);
    s.schedule.h = r.positive("schedule.h", s.schedule.dt);
    s.schedule.stride = r.count("schedule.stride", 1);
    if (s.schedule.dt > s.schedule.t_end) throw ConfigError("schedule.dt", "must not exceed schedule.t_end");
    if (s.schedule.h > s.schedule.t_end) throw ConfigError("schedule.h", "must not exceed schedule.t_end");

    if (const auto domain = s.force.domain()) {
        if (domain->first > 0.0 || domain->second < s.schedule.t_end)
            throw ConfigError("force.path", fmt::format("table covers [{}, {}] but the run needs [0, {}]",
                                                        domain->first, domain->second, s.schedule.t_end));
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", fmt::format("cannot open '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return parse_scenario(buffer.str(), base);
}

}  // namespace qfho
