#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "rng.hpp"

namespace wildfire {

/// Per-sub-area state. The integer values are the on-disk encoding.
enum class CellState : std::uint8_t { healthy = 0, afire = 1, burnt = 2, ext = 3, nonflam = 4 };

inline constexpr std::size_t cell_state_count = 5;

inline const char* to_string(CellState s) {
    switch (s) {
        case CellState::healthy: return "healthy";
        case CellState::afire: return "afire";
        case CellState::burnt: return "burnt";
        case CellState::ext: return "ext";
        case CellState::nonflam: return "nonflam";
    }
    return "?";
}

constexpr bool is_absorbing(CellState s) noexcept {
    return s == CellState::burnt || s == CellState::ext || s == CellState::nonflam;
}

enum class ControlAction : std::uint8_t { nop = 0, retardant = 1 };

/// Constant wind: either calm or a unit vector pointing where the wind blows.
class Wind {
public:
    Wind() = default;

    static Wind calm() { return {}; }

    static Wind toward(Vec2 w) {
        const double len = norm(w);
        if (len == 0.0) return {};
        if (std::abs(len - 1.0) > 1e-9) {
            throw std::invalid_argument("wind vector must have length 0 or 1, got " + std::to_string(len));
        }
        Wind out;
        out.vector_ = w;
        out.magnitude_ = 1.0;
        return out;
    }

    bool is_calm() const noexcept { return magnitude_ == 0.0; }
    Vec2 vector() const noexcept { return vector_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    Vec2 vector_{};
    double magnitude_ = 0.0;
};

/// Fire model parameters (alpha0, alpha_wind, beta, zeta).
struct FireParams {
    double alpha0 = 0.7;
    double alpha_wind = 1.0;
    double beta = 0.6;
    double zeta = 1.0;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const {
        auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
        if (!(alpha0 >= 0.0 && alpha0 < 1.0)) fail("alpha0 must lie in [0, 1)");
        if (!(alpha_wind > 0.0 && alpha_wind <= 1.0)) fail("alpha_wind must lie in (0, 1]");
        if (!(beta >= 0.0 && beta <= 1.0)) fail("beta must lie in [0, 1]");
        if (!(zeta >= 0.0 && zeta <= 1.0)) fail("zeta must lie in [0, 1]");
        if (alpha0 > alpha_wind) fail("alpha0 must not exceed alpha_wind");
    }
};

/// Probability that one burning neighbour in direction e fails to ignite the cell.
inline double non_ignition_prob(Vec2 e, const Wind& w, const FireParams& p) {
    if (w.is_calm()) return p.alpha0;
    const double d = dot(e, w.vector());
    // alpha0*|w| / (1 - (1 - alpha0/alpha_wind) d), scaled through by alpha_wind;
    // this form of the denominator is exactly alpha0 at d = 1
    const double denom = p.alpha0 * d + p.alpha_wind * (1.0 - d);
    if (denom == 0.0) return p.alpha_wind;  // alpha0 = 0, d = 1: limit of the formula
    double r = p.alpha_wind * (p.alpha0 * w.magnitude() / denom);
    constexpr double slack = 1e-12;
    if (!(r >= -slack && r <= 1.0 + slack)) {
        throw std::domain_error("non-ignition probability " + std::to_string(r) + " outside [0, 1]");
    }
    return std::clamp(r, 0.0, 1.0);
}

/// alpha(e_k, w) for every slot k of the grid kind.
inline std::array<double, max_directions> non_ignition_table(GridKind kind, const Wind& w, const FireParams& p) {
    std::array<double, max_directions> table{};
    table.fill(1.0);
    for (const auto& d : direction_set(kind)) table[static_cast<std::size_t>(d.slot)] = non_ignition_prob(d.vector, w, p);
    return table;
}

/// Full CA state x(t): one CellState per sub-area plus the time index.
struct ForestState {
    std::shared_ptr<const Topology> topology;
    std::vector<CellState> cells;
    std::uint64_t t = 0;

    static ForestState uniform(std::shared_ptr<const Topology> topo, CellState s = CellState::healthy) {
        ForestState out;
        out.cells.assign(topo->size(), s);
        out.topology = std::move(topo);
        return out;
    }

    CellState at(CellIndex i) const { return cells[topology->checked(i)]; }
    CellState& at(CellIndex i) { return cells[topology->checked(i)]; }

    friend bool operator==(const ForestState& a, const ForestState& b) {
        return a.t == b.t && a.cells == b.cells && a.topology->kind() == b.topology->kind() &&
               a.topology->n() == b.topology->n();
    }
};

namespace detail {

inline double ignition_from_table(const Topology& topo, std::span<const CellState> cells, std::size_t i,
                                  const std::array<double, max_directions>& alpha) {
    double keep = 1.0;
    const auto slots = topo.neighbor_slots(i);
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto j = slots[k];
        if (j != Topology::no_cell && cells[static_cast<std::size_t>(j)] == CellState::afire) keep *= alpha[k];
    }
    return 1.0 - keep;
}

}  // namespace detail

/// p_ha(i) = 1 - prod over burning neighbours of alpha(e, w).
inline double ignition_prob(CellIndex i, const ForestState& forest, const Wind& w, const FireParams& p) {
    const Topology& topo = *forest.topology;
    const auto li = topo.checked(i);
    return detail::ignition_from_table(topo, forest.cells, li, non_ignition_table(topo.kind(), w, p));
}

/// Extinguish probability p_ae(v).
constexpr double extinguish_prob(ControlAction v, const FireParams& p) noexcept {
    return v == ControlAction::retardant ? p.zeta : 0.0;
}

/// Burn-down probability, clamped so that p_ab + p_ae <= 1.
constexpr double burnout_prob(ControlAction v, const FireParams& p) noexcept {
    return std::min(p.beta, 1.0 - extinguish_prob(v, p));
}

/// One draw of the per-cell transition kernel. `draw` is uniform in [0, 1).
/// Afire outcomes are laid out as [ext | burnt | afire] along the unit interval.
constexpr CellState cell_transition(CellState s, ControlAction v, double p_ha, const FireParams& p,
                                    double draw) noexcept {
    switch (s) {
        case CellState::healthy:
            return draw < p_ha ? CellState::afire : CellState::healthy;
        case CellState::afire: {
            const double p_ae = extinguish_prob(v, p);
            if (draw < p_ae) return CellState::ext;
            if (draw < p_ae + burnout_prob(v, p)) return CellState::burnt;
            return CellState::afire;
        }
        default:
            return s;
    }
}

/// Synchronous forest update with reusable buffers. Every healthy or afire cell
/// consumes exactly one draw, in row-major order.
class FireStepper {
public:
    FireStepper(GridKind kind, const Wind& w, const FireParams& p)
        : params_(p), alpha_(non_ignition_table(kind, w, p)) {
        p.validate();
    }

    const FireParams& params() const noexcept { return params_; }

    /// Advance with per-cell controls (size must equal N).
    void step(ForestState& forest, std::span<const ControlAction> controls, Rng& rng) {
        if (controls.size() != forest.cells.size()) {
            throw std::invalid_argument("controls length " + std::to_string(controls.size()) +
                                        " does not match cell count " + std::to_string(forest.cells.size()));
        }
        advance(forest, rng, [&](std::size_t i) { return controls[i]; });
    }

    /// Advance with all-nop controls.
    void step(ForestState& forest, Rng& rng) {
        advance(forest, rng, [](std::size_t) { return ControlAction::nop; });
    }

private:
    template <typename Controls>
    void advance(ForestState& forest, Rng& rng, Controls&& control_of) {
        const Topology& topo = *forest.topology;
        const std::span<const CellState> cur = forest.cells;
        next_.resize(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const CellState s = cur[i];
            if (is_absorbing(s)) {
                next_[i] = s;
                continue;
            }
            const double p_ha = s == CellState::healthy ? detail::ignition_from_table(topo, cur, i, alpha_) : 0.0;
            next_[i] = cell_transition(s, control_of(i), p_ha, params_, rng.uniform());
        }
        forest.cells.swap(next_);
        ++forest.t;
    }

    FireParams params_;
    std::array<double, max_directions> alpha_;
    std::vector<CellState> next_;
};

/// x(t+1) from x(t) and u(t).
inline ForestState forest_step(const ForestState& forest, std::span<const ControlAction> controls, const Wind& w,
                               const FireParams& p, Rng& rng) {
    ForestState out = forest;
    FireStepper(forest.topology->kind(), w, p).step(out, controls, rng);
    return out;
}

/// Index of the cell nearest the planar centroid; ties go to the lowest index.
inline std::size_t center_cell(const Topology& topo) {
    const Vec2 c = topo.centroid();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < topo.size(); ++i) {
        const double d = norm(topo.center(i) - c);
        if (d < best_d - 1e-9) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

/// Sets the central cell afire. Only valid at t = 0.
inline ForestState ignite_center(ForestState forest) {
    if (forest.t != 0) throw std::logic_error("ignite_center requires t = 0");
    forest.cells[center_cell(*forest.topology)] = CellState::afire;
    return forest;
}

}  // namespace wildfire
