#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "agent.hpp"
#include "fire.hpp"
#include "rng.hpp"
#include "strategy.hpp"

namespace wildfire {

inline constexpr int micro_steps_per_update = 6;

/// A logged departure from the nominal agent rules.
struct Deviation {
    enum class Kind { blocked, illegal_direction };
    Kind kind = Kind::blocked;
    std::uint64_t t = 0;
    int micro = 0;
    std::size_t agent = 0;
    CellIndex position;
};

/// One retardant application on a burning cell.
struct ExtinguishTrial {
    std::size_t agent = 0;
    std::size_t cell = 0;
    bool success = false;
};

/// Snapshot handed to observers after every micro-step.
struct MicroStepTrace {
    std::uint64_t t = 0;
    int micro = 0;
    std::span<const AgentState> agents;
    std::span<const ControlAction> retardant;
    const ForestState* forest = nullptr;
    std::span<const ExtinguishTrial> trials;
};

using MicroStepObserver = std::function<void(const MicroStepTrace&)>;

/// The agent transition system: positions, memories, retardant map u(t) and
/// the strategy that drives them.
class AgentSystem {
public:
    AgentSystem(std::vector<AgentState> agents, std::unique_ptr<Strategy> strategy)
        : agents_(std::move(agents)), strategy_(std::move(strategy)) {
        std::sort(agents_.begin(), agents_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    }

    /// Records x(0) for the radio receiver and takes the first camera reading.
    void start(const ForestState& initial) {
        const Topology& topo = *initial.topology;
        initial_fire_ = std::make_shared<const std::vector<CellState>>(initial.cells);
        retardant_.assign(topo.size(), ControlAction::nop);
        if (strategy_) strategy_->on_episode_start(*initial_fire_, topo);
        last_obs_.clear();
        for (auto& a : agents_) {
            topo.checked(a.position);
            last_obs_.push_back(sense(a, initial, board(), initial_fire_));
        }
    }

    std::span<const AgentState> agents() const noexcept { return agents_; }
    std::span<const ControlAction> retardant() const noexcept { return retardant_; }
    std::span<const Deviation> deviations() const noexcept { return deviations_; }
    std::shared_ptr<const std::vector<CellState>> initial_fire() const { return initial_fire_; }

    std::size_t retardant_count() const {
        return static_cast<std::size_t>(std::count(retardant_.begin(), retardant_.end(), ControlAction::retardant));
    }

    void reset_retardant() { std::fill(retardant_.begin(), retardant_.end(), ControlAction::nop); }

    void set_observer(MicroStepObserver obs) { observer_ = std::move(obs); }

    /// One tick: each agent in id order moves, senses, then applies its action.
    /// Retardant on a burning cell triggers an immediate extinguish trial.
    void micro_step(ForestState& forest, const FireParams& params, Rng& rng, int micro = 0) {
        trials_.clear();
        if (agents_.empty() || !strategy_) {
            notify(forest, micro);
            return;
        }
        const Topology& topo = *forest.topology;
        for (std::size_t k = 0; k < agents_.size(); ++k) {
            AgentState& a = agents_[k];

            // move
            const StrategyDecision plan = strategy_->decide(last_obs_[k], topo);
            MoveProposal proposal{a.id, a.position, {}};
            if (legal_slot(topo, a.position, plan.move_slot)) {
                proposal.preferences = preference_order(topo, a.position, plan.move_slot);
            } else {
                deviations_.push_back({Deviation::Kind::illegal_direction, forest.t, micro, a.id, a.position});
                proposal.preferences = canonical_order(topo, a.position);
            }
            std::vector<CellIndex> others;
            others.reserve(agents_.size());
            for (const auto& b : agents_)
                if (b.id != a.id) others.push_back(b.position);
            const MoveResult moved = resolve_moves(std::span(&proposal, 1), others).front();
            if (moved.blocked) deviations_.push_back({Deviation::Kind::blocked, forest.t, micro, a.id, a.position});
            a.position = moved.position;

            // sense
            last_obs_[k] = sense(a, forest, board(), initial_fire_);

            // apply_actions
            if (strategy_->decide(last_obs_[k], topo).action == ControlAction::retardant) {
                const std::size_t cell = topo.linear(a.position);
                retardant_[cell] = ControlAction::retardant;
                if (forest.cells[cell] == CellState::afire) {
                    const bool success = rng.uniform() < extinguish_prob(ControlAction::retardant, params);
                    if (success) forest.cells[cell] = CellState::ext;
                    trials_.push_back({a.id, cell, success});
                }
            }
        }
        notify(forest, micro);
    }

private:
    static bool legal_slot(const Topology& topo, CellIndex at, int slot) {
        if (slot < 0 || static_cast<std::size_t>(slot) >= topo.slots()) return false;
        return topo.neighbor_at(topo.linear(at), static_cast<std::size_t>(slot)) != Topology::no_cell;
    }

    std::shared_ptr<const AgentBoard> board() const {
        auto b = std::make_shared<AgentBoard>();
        b->positions.reserve(agents_.size());
        for (const auto& a : agents_) b->positions.push_back(a.position);
        b->retardant = retardant_;
        return b;
    }

    void notify(const ForestState& forest, int micro) const {
        if (!observer_) return;
        observer_(MicroStepTrace{forest.t, micro, agents_, retardant_, &forest, trials_});
    }

    std::vector<AgentState> agents_;
    std::unique_ptr<Strategy> strategy_;
    std::shared_ptr<const std::vector<CellState>> initial_fire_;
    std::vector<ControlAction> retardant_;
    std::vector<Observation> last_obs_;
    std::vector<Deviation> deviations_;
    std::vector<ExtinguishTrial> trials_;
    MicroStepObserver observer_;
};

/// Six agent ticks, then one forest update without agent controls. Returns the
/// number of cells marked with retardant during the step; the map is then cleared.
inline std::size_t macro_step(AgentSystem& agents, ForestState& forest, FireStepper& stepper, Rng& rng) {
    for (int m = 0; m < micro_steps_per_update; ++m) agents.micro_step(forest, stepper.params(), rng, m);
    const std::size_t marked = agents.retardant_count();
    stepper.step(forest, rng);
    agents.reset_retardant();
    return marked;
}

}  // namespace wildfire
