#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "fire.hpp"

namespace wildfire {

/// Number of cells in each state.
struct StateCensus {
    std::size_t n_healthy = 0;
    std::size_t n_afire = 0;
    std::size_t n_burnt = 0;
    std::size_t n_ext = 0;
    std::size_t n_nonflam = 0;

    std::size_t total() const noexcept { return n_healthy + n_afire + n_burnt + n_ext + n_nonflam; }

    std::size_t count(CellState s) const noexcept {
        switch (s) {
            case CellState::healthy: return n_healthy;
            case CellState::afire: return n_afire;
            case CellState::burnt: return n_burnt;
            case CellState::ext: return n_ext;
            case CellState::nonflam: return n_nonflam;
        }
        return 0;
    }

    friend bool operator==(const StateCensus&, const StateCensus&) = default;
};

/// Coefficients of G(x, t) = c_healthy N_healthy + c_ext N_ext + c_time t.
struct CostCoefficients {
    double c_healthy = 1.0;
    double c_ext = 1.0;
    double c_time = 0.0;

    friend bool operator==(const CostCoefficients&, const CostCoefficients&) = default;
};

inline StateCensus calc_statistic(std::span<const CellState> cells) {
    std::array<std::size_t, cell_state_count> counts{};
    for (const auto s : cells) ++counts[static_cast<std::size_t>(s)];
    return {counts[0], counts[1], counts[2], counts[3], counts[4]};
}

inline StateCensus calc_statistic(const ForestState& forest) { return calc_statistic(forest.cells); }

inline double success_metric(const StateCensus& census, std::uint64_t t, const CostCoefficients& c) {
    return c.c_healthy * static_cast<double>(census.n_healthy) + c.c_ext * static_cast<double>(census.n_ext) +
           c.c_time * static_cast<double>(t);
}

}  // namespace wildfire
