#pragma once

// Requires yaml-cpp.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <system_error>

#include <yaml-cpp/yaml.h>

#include "config.hpp"

namespace wildfire {

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

inline bool parse_bool(const std::string& key, std::string_view text) {
    const std::string v = lower(text);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(key, "expected a boolean, got '" + std::string(text) + "'");
}

/// Shortest text that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace detail

/// Names accepted by parse_config / apply_setting, in serialization order.
inline constexpr std::array<std::string_view, 17> config_keys{
    "grid", "n", "agents", "tau", "alpha0", "alpha_wind", "beta", "zeta", "wind",
    "agent_mode", "logfile", "seed", "c_healthy", "c_ext", "c_time", "output", "GUI",
};

/// Assigns one key from its textual value. Does not run cross-key validation.
inline void apply_setting(Config& c, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "grid") {
        const auto v = lower(value);
        if (v == "rectangular") c.grid = GridKind::rectangular;
        else if (v == "hexagonal") c.grid = GridKind::hexagonal;
        else throw ConfigError(key, "expected rectangular or hexagonal, got '" + value + "'");
    } else if (key == "n") {
        c.n = parse_number<int>(key, value);
    } else if (key == "agents") {
        c.agents = parse_number<int>(key, value);
    } else if (key == "tau") {
        c.tau = parse_number<int>(key, value);
    } else if (key == "alpha0") {
        c.fire.alpha0 = parse_number<double>(key, value);
    } else if (key == "alpha_wind") {
        c.fire.alpha_wind = parse_number<double>(key, value);
    } else if (key == "beta") {
        c.fire.beta = parse_number<double>(key, value);
    } else if (key == "zeta") {
        c.fire.zeta = parse_number<double>(key, value);
    } else if (key == "wind") {
        const auto it = std::find_if(compass_names.begin(), compass_names.end(), [&](const auto& p) {
            return lower(p.second) == lower(value);
        });
        if (it == compass_names.end()) throw ConfigError(key, "expected none or a compass direction (N, NE, ...), got '" + value + "'");
        c.wind = it->first;
    } else if (key == "agent_mode") {
        const auto v = lower(value);
        if (v == "haksar") c.agent_mode = AgentMode::haksar;
        else if (v == "user") c.agent_mode = AgentMode::user;
        else throw ConfigError(key, "expected Haksar or user, got '" + value + "'");
    } else if (key == "logfile") {
        c.logfile = parse_bool(key, value);
    } else if (key == "GUI") {
        parse_bool(key, value);  // accepted for compatibility, no effect
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "c_healthy") {
        c.cost.c_healthy = parse_number<double>(key, value);
    } else if (key == "c_ext") {
        c.cost.c_ext = parse_number<double>(key, value);
    } else if (key == "c_time") {
        c.cost.c_time = parse_number<double>(key, value);
    } else if (key == "output") {
        const auto v = lower(value);
        if (v == "none") c.output = FrameFormat::none;
        else if (v == "ascii") c.output = FrameFormat::ascii;
        else if (v == "png") c.output = FrameFormat::png;
        else throw ConfigError(key, "expected none, ascii or png, got '" + value + "'");
    } else {
        throw ConfigError(key, "unknown key");
    }
}

/// Parses flat key: value YAML. Missing keys keep their defaults.
inline Config parse_config(const std::string& text, Config base = {}) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", std::string("malformed YAML: ") + e.what());
    }
    if (root.IsNull()) {
        base.validate();
        return base;
    }
    if (!root.IsMap()) throw ConfigError("<document>", "expected a mapping of key: value pairs");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kv.second.IsScalar()) throw ConfigError(key, "expected a scalar value");
        apply_setting(base, key, kv.second.Scalar());
    }
    base.validate();
    return base;
}

/// Inverse of parse_config: one `key: value` line per setting (GUI omitted).
inline std::string serialize_config(const Config& c) {
    using detail::format_double;
    std::string out;
    auto line = [&](std::string_view key, const std::string& value) {
        out.append(key).append(": ").append(value).push_back('\n');
    };
    line("grid", to_string(c.grid));
    line("n", std::to_string(c.n));
    line("agents", std::to_string(c.agents));
    line("tau", std::to_string(c.tau));
    line("alpha0", format_double(c.fire.alpha0));
    line("alpha_wind", format_double(c.fire.alpha_wind));
    line("beta", format_double(c.fire.beta));
    line("zeta", format_double(c.fire.zeta));
    line("wind", std::string(compass_names[static_cast<std::size_t>(c.wind)].second));
    line("agent_mode", to_string(c.agent_mode));
    line("logfile", c.logfile ? "true" : "false");
    line("seed", std::to_string(c.seed));
    line("c_healthy", format_double(c.cost.c_healthy));
    line("c_ext", format_double(c.cost.c_ext));
    line("c_time", format_double(c.cost.c_time));
    line("output", to_string(c.output));
    return out;
}

/// Applies command-line overrides on top of a parsed file, then validates.
inline Config apply_overrides(Config c, const std::map<std::string, std::string>& overrides) {
    for (const auto& [key, value] : overrides) apply_setting(c, key, value);
    c.validate();
    return c;
}

}  // namespace wildfire
