#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fire.hpp"
#include "grid.hpp"
#include "metrics.hpp"

namespace wildfire {

/// Raised for invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Wind directions accepted in configuration; the vector points where the wind blows.
enum class Compass : std::uint8_t { none, N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<std::pair<Compass, std::string_view>, 9> compass_names{{
    {Compass::none, "none"},
    {Compass::N, "N"},
    {Compass::NE, "NE"},
    {Compass::E, "E"},
    {Compass::SE, "SE"},
    {Compass::S, "S"},
    {Compass::SW, "SW"},
    {Compass::W, "W"},
    {Compass::NW, "NW"},
}};

inline Vec2 compass_vector(Compass c) {
    constexpr double h = detail::inv_sqrt2;
    switch (c) {
        case Compass::none: return {0.0, 0.0};
        case Compass::N: return {0.0, 1.0};
        case Compass::NE: return {h, h};
        case Compass::E: return {1.0, 0.0};
        case Compass::SE: return {h, -h};
        case Compass::S: return {0.0, -1.0};
        case Compass::SW: return {-h, -h};
        case Compass::W: return {-1.0, 0.0};
        case Compass::NW: return {-h, h};
    }
    return {};
}

enum class AgentMode : std::uint8_t { haksar, user };

inline const char* to_string(AgentMode m) { return m == AgentMode::haksar ? "Haksar" : "user"; }

enum class FrameFormat : std::uint8_t { none, ascii, png };

inline const char* to_string(FrameFormat f) {
    switch (f) {
        case FrameFormat::none: return "none";
        case FrameFormat::ascii: return "ascii";
        case FrameFormat::png: return "png";
    }
    return "none";
}

/// Complete run configuration.
struct Config {
    GridKind grid = GridKind::hexagonal;
    int n = 42;
    int agents = 0;
    int tau = 0;  // macro-steps; 0 runs until no cell burns
    FireParams fire;
    Compass wind = Compass::none;
    AgentMode agent_mode = AgentMode::haksar;
    bool logfile = false;
    CostCoefficients cost;
    std::uint64_t seed = 0;
    FrameFormat output = FrameFormat::none;

    Wind wind_vector() const { return Wind::toward(compass_vector(wind)); }

    void validate() const {
        if (n < 1) throw ConfigError("n", "must be >= 1");
        if (agents < 0) throw ConfigError("agents", "must be >= 0");
        if (tau < 0) throw ConfigError("tau", "must be >= 0");
        try {
            fire.validate();
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            throw ConfigError(msg.substr(0, msg.find(' ')), msg);
        }
        const std::size_t ring = n == 1 ? 1 : 4 * static_cast<std::size_t>(n - 1);
        if (static_cast<std::size_t>(agents) > ring) {
            throw ConfigError("agents", "exceeds the " + std::to_string(ring) + " boundary cells available");
        }
    }

    friend bool operator==(const Config& a, const Config& b) {
        return a.grid == b.grid && a.n == b.n && a.agents == b.agents && a.tau == b.tau &&
               a.fire.alpha0 == b.fire.alpha0 && a.fire.alpha_wind == b.fire.alpha_wind &&
               a.fire.beta == b.fire.beta && a.fire.zeta == b.fire.zeta && a.wind == b.wind &&
               a.agent_mode == b.agent_mode && a.logfile == b.logfile && a.cost == b.cost && a.seed == b.seed &&
               a.output == b.output;
    }
};

/// Slider mapping: alpha0 = 1 - l/10, beta = p/10, zeta = e/10 with l, p, e in [0, 10].
struct SliderParams {
    double alpha0;
    double beta;
    double zeta;
};

inline SliderParams map_slider_params(int l, int p, int e) {
    auto check = [](int v, const char* name) {
        if (v < 0 || v > 10) throw std::invalid_argument(std::string(name) + " must lie in [0, 10], got " + std::to_string(v));
    };
    check(l, "ignition likelihood");
    check(p, "fire persistence");
    check(e, "retardant efficiency");
    return {1.0 - l / 10.0, p / 10.0, e / 10.0};
}

}  // namespace wildfire
