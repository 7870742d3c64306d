#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agent.hpp"
#include "fire.hpp"
#include "grid.hpp"

namespace wildfire {

/// Output of a strategy: where to go next (a slot of B) and what to do there.
struct StrategyDecision {
    int move_slot = 0;
    ControlAction action = ControlAction::nop;

    friend bool operator==(const StrategyDecision&, const StrategyDecision&) = default;
};

enum class Phase { approach, front_follow };

/// The phase is the memory bit: approach until fire has been sensed.
constexpr Phase phase_of(bool memory) noexcept { return memory ? Phase::front_follow : Phase::approach; }

/// Interface for firefighting strategies.
///
/// The engine calls on_episode_start once with x(0), then decide() with an
/// Observation before every move (the move slot is used) and again after
/// sensing at the new cell (the action is used). A strategy sees nothing
/// beyond the Observation and the immutable topology.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual void on_episode_start(std::span<const CellState> /*initial_fire*/, const Topology& /*topology*/) {}
    virtual StrategyDecision decide(const Observation& obs, const Topology& topology) = 0;
};

/// Mean centre of the cells burning in x(0); the grid centroid if none burn.
inline Vec2 source_centroid(std::span<const CellState> initial_fire, const Topology& topo) {
    Vec2 sum;
    std::size_t count = 0;
    for (std::size_t i = 0; i < initial_fire.size(); ++i) {
        if (initial_fire[i] == CellState::afire) {
            sum = sum + topo.center(i);
            ++count;
        }
    }
    if (count == 0) return topo.centroid();
    return (1.0 / static_cast<double>(count)) * sum;
}

namespace detail {

inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

inline bool is_fire_trace(CellState s) { return s == CellState::afire || s == CellState::burnt; }

inline int approach_slot(const Topology& topo, std::size_t here, Vec2 source) {
    int best = -1;
    double best_d = 0.0;
    for (std::size_t k = 0; k < topo.slots(); ++k) {
        const auto j = topo.neighbor_at(here, k);
        if (j == Topology::no_cell) continue;
        const double d = norm(topo.center(static_cast<std::size_t>(j)) - source);
        if (best < 0 || d < best_d - 1e-12) {
            best = static_cast<int>(k);
            best_d = d;
        }
    }
    return std::max(best, 0);
}

}  // namespace detail

/// Two-phase heuristic: greedy approach to the fire source, then orbit the
/// source counterclockwise while fire stays in view, stepping onto burning
/// cells when one is adjacent. Retardant whenever the cell below is burning.
inline StrategyDecision heuristic_decide(const Observation& obs, const Topology& topo, Vec2 source) {
    StrategyDecision out;
    out.action = !obs.camera.empty() && obs.camera.front() == CellState::afire ? ControlAction::retardant
                                                                               : ControlAction::nop;
    const std::size_t here = topo.checked(obs.position);
    out.move_slot = detail::approach_slot(topo, here, source);
    if (phase_of(obs.memory) == Phase::approach) return out;

    // Known fire: camera cells holding afire or burnt, by linear index.
    const auto view = topo.ring1_view(obs.position);
    std::vector<std::size_t> known_fire, burning;
    for (std::size_t v = 0; v < view.size() && v < obs.camera.size(); ++v) {
        if (!view[v]) continue;
        if (detail::is_fire_trace(obs.camera[v])) known_fire.push_back(*view[v]);
        if (obs.camera[v] == CellState::afire) burning.push_back(*view[v]);
    }
    const auto known = [](const std::vector<std::size_t>& set, std::size_t cell) {
        return std::find(set.begin(), set.end(), cell) != set.end();
    };

    // Among neighbours keeping fire in view, burning cells come first, then
    // the largest counterclockwise step around the source.
    const Vec2 rel_here = topo.center(here) - source;
    const double angle_here = std::atan2(rel_here.y, rel_here.x);
    int best = -1;
    bool best_burning = false;
    double best_progress = 0.0;
    for (std::size_t k = 0; k < topo.slots(); ++k) {
        const auto j = topo.neighbor_at(here, k);
        if (j == Topology::no_cell) continue;
        const auto cand = static_cast<std::size_t>(j);
        bool keeps_view = known(known_fire, cand);
        for (const auto nb : topo.neighbor_slots(cand)) {
            if (keeps_view) break;
            keeps_view = nb != Topology::no_cell && known(known_fire, static_cast<std::size_t>(nb));
        }
        if (!keeps_view) continue;
        const bool on_fire = known(burning, cand);
        const Vec2 rel = topo.center(cand) - source;
        // the angle is undefined at the source itself; count it as no progress
        const double progress = norm(rel) < 1e-9 ? 0.0 : detail::wrap_angle(std::atan2(rel.y, rel.x) - angle_here);
        if (best < 0 || (on_fire && !best_burning) || (on_fire == best_burning && progress > best_progress + 1e-12)) {
            best = static_cast<int>(k);
            best_burning = on_fire;
            best_progress = progress;
        }
    }
    if (best >= 0) out.move_slot = best;
    return out;
}

/// The built-in heuristic strategy ("Haksar").
class HeuristicStrategy final : public Strategy {
public:
    void on_episode_start(std::span<const CellState> initial_fire, const Topology& topo) override {
        source_ = source_centroid(initial_fire, topo);
        cached_for_ = initial_fire.data();
    }

    StrategyDecision decide(const Observation& obs, const Topology& topo) override {
        if (obs.initial_fire && obs.initial_fire->data() != cached_for_) on_episode_start(*obs.initial_fire, topo);
        return heuristic_decide(obs, topo, source_);
    }

private:
    Vec2 source_;
    const CellState* cached_for_ = nullptr;
};

/// Starting point for a custom strategy, selected with agent_mode: user. It
/// walks in the first available direction and never applies retardant;
/// replace it through register_user_strategy().
class UserStrategy : public Strategy {
public:
    StrategyDecision decide(const Observation& obs, const Topology& topo) override {
        const std::size_t here = topo.checked(obs.position);
        int slot = 0;
        while (static_cast<std::size_t>(slot) < topo.slots() &&
               topo.neighbor_at(here, static_cast<std::size_t>(slot)) == Topology::no_cell)
            ++slot;
        return {slot, ControlAction::nop};
    }
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>()>;

/// Name -> strategy factory. Names are case-insensitive.
class StrategyRegistry {
public:
    static StrategyRegistry& instance() {
        static StrategyRegistry registry;
        return registry;
    }

    void add(const std::string& name, StrategyFactory factory) { factories_[key(name)] = std::move(factory); }

    bool contains(const std::string& name) const { return factories_.count(key(name)) != 0; }

    std::unique_ptr<Strategy> create(const std::string& name) const {
        const auto it = factories_.find(key(name));
        if (it == factories_.end()) throw std::invalid_argument("unknown strategy '" + name + "'");
        return it->second();
    }

private:
    StrategyRegistry() {
        add("haksar", [] { return std::make_unique<HeuristicStrategy>(); });
        add("user", [] { return std::make_unique<UserStrategy>(); });
    }

    static std::string key(std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    }

    std::map<std::string, StrategyFactory> factories_;
};

/// Makes agent_mode: user dispatch to `factory`.
inline void register_user_strategy(StrategyFactory factory) {
    StrategyRegistry::instance().add("user", std::move(factory));
}

}  // namespace wildfire
