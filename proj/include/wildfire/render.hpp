#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agent.hpp"
#include "config.hpp"
#include "fire.hpp"

namespace wildfire {

struct Rgb {
    std::uint8_t r, g, b;
    friend constexpr bool operator==(Rgb, Rgb) = default;
};

/// Palette indexed by the CellState encoding.
inline constexpr std::array<Rgb, cell_state_count> state_colors{{
    {34, 139, 34},    // healthy
    {220, 20, 20},    // afire
    {0, 0, 0},        // burnt
    {30, 80, 220},    // ext
    {128, 128, 128},  // nonflam
}};
inline constexpr Rgb agent_color{255, 215, 0};

inline constexpr std::array<char, cell_state_count> state_glyphs{'.', '*', '#', 'o', 'x'};
inline constexpr char agent_glyph = 'A';

struct RenderOptions {
    FrameFormat format = FrameFormat::ascii;
    int scale = 8;  // pixels per cell edge (png only)

    void validate() const {
        if (format == FrameFormat::none) throw std::invalid_argument("render format 'none' produces no frame");
        if (scale < 1 || scale > 64) throw std::invalid_argument("render scale must lie in [1, 64]");
    }
};

namespace detail {

/// Row-major mask of agent-occupied cells.
inline std::vector<bool> agent_mask(const Topology& topo, std::span<const AgentState> agents) {
    std::vector<bool> mask(topo.size(), false);
    for (const auto& a : agents) mask[topo.checked(a.position)] = true;
    return mask;
}

}  // namespace detail

/// Text frame, north (highest row) first. Hexagonal rows are space-separated
/// with odd rows shifted right by one column.
inline std::string render_ascii(const ForestState& forest, std::span<const AgentState> agents) {
    const Topology& topo = *forest.topology;
    const auto mask = detail::agent_mask(topo, agents);
    const bool hex = topo.kind() == GridKind::hexagonal;
    std::string out;
    for (int r = topo.n() - 1; r >= 0; --r) {
        if (hex && (r & 1)) out.push_back(' ');
        for (int c = 0; c < topo.n(); ++c) {
            const auto i = topo.linear({r, c});
            if (hex && c > 0) out.push_back(' ');
            out.push_back(mask[i] ? agent_glyph : state_glyphs[static_cast<std::size_t>(forest.cells[i])]);
        }
        out.push_back('\n');
    }
    return out;
}

/// Raw RGB raster; hexagonal odd rows are shifted by half a cell.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, top row first
};

inline Raster rasterize(const ForestState& forest, std::span<const AgentState> agents, int scale) {
    const Topology& topo = *forest.topology;
    const auto mask = detail::agent_mask(topo, agents);
    const bool hex = topo.kind() == GridKind::hexagonal;
    Raster img;
    img.width = topo.n() * scale + (hex ? scale / 2 : 0);
    img.height = topo.n() * scale;
    img.rgb.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3, 255);
    for (int r = 0; r < topo.n(); ++r) {
        const int y0 = (topo.n() - 1 - r) * scale;
        const int x_shift = hex && (r & 1) ? scale / 2 : 0;
        for (int c = 0; c < topo.n(); ++c) {
            const auto i = topo.linear({r, c});
            const Rgb col = mask[i] ? agent_color : state_colors[static_cast<std::size_t>(forest.cells[i])];
            for (int y = y0; y < y0 + scale; ++y) {
                for (int x = c * scale + x_shift; x < (c + 1) * scale + x_shift; ++x) {
                    auto* px = &img.rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) +
                                         static_cast<std::size_t>(x)) * 3];
                    px[0] = col.r;
                    px[1] = col.g;
                    px[2] = col.b;
                }
            }
        }
    }
    return img;
}

}  // namespace wildfire
