#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fire.hpp"
#include "grid.hpp"

namespace wildfire {

/// One firefighting agent: the Z-component plus its memory bit.
struct AgentState {
    std::size_t id = 0;
    CellIndex position;
    bool memory = false;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// What the radio receiver carries at any time: agent positions (by id) and
/// the current retardant map u(t).
struct AgentBoard {
    std::vector<CellIndex> positions;
    std::vector<ControlAction> retardant;

    friend bool operator==(const AgentBoard&, const AgentBoard&) = default;
};

/// Everything an agent knows when deciding. Camera holds the ring-1 patch,
/// centre first then slot order, with off-grid entries padded as nonflam.
struct Observation {
    std::size_t id = 0;
    CellIndex position;
    bool memory = false;
    std::vector<CellState> camera;
    std::shared_ptr<const std::vector<CellState>> initial_fire;
    std::shared_ptr<const AgentBoard> board;
};

inline std::vector<CellState> camera_image(const Topology& topo, std::span<const CellState> cells, CellIndex at) {
    std::vector<CellState> out;
    const auto view = topo.ring1_view(at);
    out.reserve(view.size());
    for (const auto& v : view) out.push_back(v ? cells[*v] : CellState::nonflam);
    return out;
}

/// Reads the camera and updates the memory bit (set once afire or burnt is seen).
inline Observation sense(AgentState& agent, const ForestState& forest,
                         std::shared_ptr<const AgentBoard> board,
                         std::shared_ptr<const std::vector<CellState>> initial_fire) {
    Observation obs;
    obs.camera = camera_image(*forest.topology, forest.cells, agent.position);
    const bool fire_seen = std::any_of(obs.camera.begin(), obs.camera.end(), [](CellState s) {
        return s == CellState::afire || s == CellState::burnt;
    });
    agent.memory = agent.memory || fire_seen;
    obs.id = agent.id;
    obs.position = agent.position;
    obs.memory = agent.memory;
    obs.initial_fire = std::move(initial_fire);
    obs.board = std::move(board);
    return obs;
}

/// Deterministic initial placement, evenly spaced along the boundary walk.
inline std::vector<AgentState> place_agents(const Topology& topo, std::size_t count) {
    const auto ring = topo.boundary();
    if (count > ring.size()) {
        throw std::length_error("cannot place " + std::to_string(count) + " agents on " +
                                std::to_string(ring.size()) + " boundary cells");
    }
    std::vector<AgentState> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back({k, topo.cell(ring[k * ring.size() / count]), false});
    }
    return out;
}

/// In-grid neighbours of `from` ordered by preference: the preferred slot, then
/// slots rotating outward from it (+1, -1, +2, -2, ...).
inline std::vector<CellIndex> preference_order(const Topology& topo, CellIndex from, int preferred_slot) {
    const auto li = topo.checked(from);
    const int slots = static_cast<int>(topo.slots());
    std::vector<CellIndex> out;
    out.reserve(topo.slots());
    auto push = [&](int slot) {
        const int s = ((slot % slots) + slots) % slots;
        if (const auto j = topo.neighbor_at(li, static_cast<std::size_t>(s)); j != Topology::no_cell) {
            const CellIndex c = topo.cell(static_cast<std::size_t>(j));
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    };
    push(preferred_slot);
    for (int d = 1; d <= slots / 2; ++d) {
        push(preferred_slot + d);
        push(preferred_slot - d);
    }
    return out;
}

/// In-grid neighbours in plain slot order.
inline std::vector<CellIndex> canonical_order(const Topology& topo, CellIndex from) {
    std::vector<CellIndex> out;
    for (const auto& nb : topo.neighbors(from)) out.push_back(topo.cell(nb.index));
    return out;
}

struct MoveProposal {
    std::size_t id = 0;
    CellIndex from;
    std::vector<CellIndex> preferences;  // neighbours of `from`, most wanted first
};

struct MoveResult {
    std::size_t id = 0;
    CellIndex position;
    bool blocked = false;  // no free neighbour: stayed in place

    friend bool operator==(const MoveResult&, const MoveResult&) = default;
};

/// Resolves simultaneous move requests. Agents are served in ascending id; each
/// takes its first preference not held by anyone (other proposers still count
/// at their current cell until served). `occupied` lists non-moving agents.
inline std::vector<MoveResult> resolve_moves(std::span<const MoveProposal> proposals,
                                             std::span<const CellIndex> occupied) {
    std::vector<const MoveProposal*> order;
    order.reserve(proposals.size());
    for (const auto& p : proposals) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

    std::vector<CellIndex> held(occupied.begin(), occupied.end());
    for (const auto* p : order) held.push_back(p->from);

    std::vector<MoveResult> out;
    out.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& p = *order[k];
        const auto self = std::find(held.begin() + static_cast<std::ptrdiff_t>(occupied.size()), held.end(), p.from);
        held.erase(self);
        MoveResult r{p.id, p.from, true};
        for (const auto& target : p.preferences) {
            if (target == p.from) continue;
            if (std::find(held.begin(), held.end(), target) == held.end()) {
                r.position = target;
                r.blocked = false;
                break;
            }
        }
        held.push_back(r.position);
        out.push_back(r);
    }
    return out;
}

}  // namespace wildfire
