#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wildfire {

/// Planar point / vector. y grows with the row index ("north").
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) {
    const double len = norm(a);
    return {a.x / len, a.y / len};
}

enum class GridKind : std::uint8_t { rectangular, hexagonal };

inline const char* to_string(GridKind kind) {
    return kind == GridKind::rectangular ? "rectangular" : "hexagonal";
}

/// Number of neighbour directions |B| for a partition kind.
constexpr std::size_t direction_count(GridKind kind) {
    return kind == GridKind::rectangular ? 8 : 6;
}

constexpr std::size_t max_directions = 8;

/// Row/column address of a sub-area. Hexagonal grids use odd-row offset
/// layout: odd rows sit half a pitch further east.
struct CellIndex {
    int row = 0;
    int col = 0;
    friend constexpr bool operator==(CellIndex, CellIndex) = default;
};

/// One element e_k of the direction set B. `slot` is the canonical position k.
struct Direction {
    Vec2 vector;
    int slot = 0;
};

namespace detail {

inline constexpr double inv_sqrt2 = 0.70710678118654752440;
inline constexpr double half_sqrt3 = 0.86602540378443864676;

// E, NE, N, NW, W, SW, S, SE
inline constexpr std::array<Direction, 8> rect_directions{{
    {{1.0, 0.0}, 0},
    {{inv_sqrt2, inv_sqrt2}, 1},
    {{0.0, 1.0}, 2},
    {{-inv_sqrt2, inv_sqrt2}, 3},
    {{-1.0, 0.0}, 4},
    {{-inv_sqrt2, -inv_sqrt2}, 5},
    {{0.0, -1.0}, 6},
    {{inv_sqrt2, -inv_sqrt2}, 7},
}};

// 0, 60, ..., 300 degrees
inline constexpr std::array<Direction, 6> hex_directions{{
    {{1.0, 0.0}, 0},
    {{0.5, half_sqrt3}, 1},
    {{-0.5, half_sqrt3}, 2},
    {{-1.0, 0.0}, 3},
    {{-0.5, -half_sqrt3}, 4},
    {{0.5, -half_sqrt3}, 5},
}};

struct Offset {
    int drow;
    int dcol;
};

inline constexpr std::array<Offset, 8> rect_offsets{{
    {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1},
}};

// odd-r offsets, indexed [row parity][slot]
inline constexpr std::array<std::array<Offset, 6>, 2> hex_offsets{{
    {{{0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}}},
    {{{0, 1}, {1, 1}, {1, 0}, {0, -1}, {-1, 0}, {-1, 1}}},
}};

}  // namespace detail

/// The canonical direction set B, counterclockwise from +x.
inline std::span<const Direction> direction_set(GridKind kind) {
    if (kind == GridKind::rectangular) return detail::rect_directions;
    return detail::hex_directions;
}

/// A neighbouring cell together with the direction pointing toward it.
struct Neighbor {
    std::size_t index;
    Direction direction;
};

/// Immutable n x n partition of the forest area. Cells are addressed either
/// by CellIndex or by the row-major linear index row * n + col.
class Topology {
public:
    static constexpr std::int32_t no_cell = -1;

    Topology(GridKind kind, int n) : kind_(kind), n_(n) {
        if (n < 1) throw std::invalid_argument("grid size n must be >= 1, got " + std::to_string(n));
        const std::size_t cells = size();
        const std::size_t slots = direction_count(kind);
        centers_.resize(cells);
        table_.assign(cells * slots, no_cell);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const std::size_t i = linear({r, c});
                centers_[i] = compute_center({r, c});
                for (std::size_t k = 0; k < slots; ++k) {
                    const auto off = offset(r, k);
                    const CellIndex other{r + off.drow, c + off.dcol};
                    if (contains(other)) table_[i * slots + k] = static_cast<std::int32_t>(linear(other));
                }
            }
        }
    }

    GridKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
    std::size_t slots() const noexcept { return direction_count(kind_); }
    std::span<const Direction> directions() const { return direction_set(kind_); }

    bool contains(CellIndex i) const noexcept { return i.row >= 0 && i.col >= 0 && i.row < n_ && i.col < n_; }

    std::size_t linear(CellIndex i) const noexcept {
        return static_cast<std::size_t>(i.row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i.col);
    }
    CellIndex cell(std::size_t linear_index) const noexcept {
        const auto n = static_cast<std::size_t>(n_);
        return {static_cast<int>(linear_index / n), static_cast<int>(linear_index % n)};
    }

    std::size_t checked(CellIndex i) const {
        if (!contains(i)) {
            throw std::out_of_range("cell (" + std::to_string(i.row) + ", " + std::to_string(i.col) +
                                    ") outside " + std::to_string(n_) + "x" + std::to_string(n_) + " grid");
        }
        return linear(i);
    }

    /// Neighbour in slot k, or no_cell when it falls off the grid.
    std::int32_t neighbor_at(std::size_t linear_index, std::size_t slot) const noexcept {
        return table_[linear_index * slots() + slot];
    }

    /// Raw slot table for cell i (length slots()), no_cell for off-grid.
    std::span<const std::int32_t> neighbor_slots(std::size_t linear_index) const noexcept {
        return {table_.data() + linear_index * slots(), slots()};
    }

    /// In-grid neighbours of i in slot order, each with the direction from i toward it.
    std::vector<Neighbor> neighbors(CellIndex i) const {
        const std::size_t li = checked(i);
        std::vector<Neighbor> out;
        out.reserve(slots());
        const auto dirs = directions();
        for (std::size_t k = 0; k < slots(); ++k) {
            if (const auto j = neighbor_at(li, k); j != no_cell) out.push_back({static_cast<std::size_t>(j), dirs[k]});
        }
        return out;
    }

    /// Camera footprint: centre first, then one entry per slot; nullopt off-grid.
    std::vector<std::optional<std::size_t>> ring1_view(CellIndex i) const {
        const std::size_t li = checked(i);
        std::vector<std::optional<std::size_t>> out;
        out.reserve(slots() + 1);
        out.emplace_back(li);
        for (std::size_t k = 0; k < slots(); ++k) {
            const auto j = neighbor_at(li, k);
            out.push_back(j == no_cell ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(j)));
        }
        return out;
    }

    Vec2 cell_center(CellIndex i) const { return centers_[checked(i)]; }
    Vec2 center(std::size_t linear_index) const noexcept { return centers_[linear_index]; }

    /// Mean of all cell centres.
    Vec2 centroid() const noexcept {
        Vec2 sum;
        for (const auto& c : centers_) sum = sum + c;
        return (1.0 / static_cast<double>(centers_.size())) * sum;
    }

    /// Boundary cells walked counterclockwise from (0,0): along row 0, up the last
    /// column, back along the last row, down column 0.
    std::vector<std::size_t> boundary() const {
        std::vector<std::size_t> out;
        if (n_ == 1) {
            out.push_back(0);
            return out;
        }
        const int last = n_ - 1;
        for (int c = 0; c < last; ++c) out.push_back(linear({0, c}));
        for (int r = 0; r < last; ++r) out.push_back(linear({r, last}));
        for (int c = last; c > 0; --c) out.push_back(linear({last, c}));
        for (int r = last; r > 0; --r) out.push_back(linear({r, 0}));
        return out;
    }

private:
    detail::Offset offset(int row, std::size_t slot) const noexcept {
        if (kind_ == GridKind::rectangular) return detail::rect_offsets[slot];
        return detail::hex_offsets[static_cast<std::size_t>(row & 1)][slot];
    }

    Vec2 compute_center(CellIndex i) const noexcept {
        if (kind_ == GridKind::rectangular) return {static_cast<double>(i.col), static_cast<double>(i.row)};
        // axial q = col - (row - (row & 1)) / 2, r = row; x = q + r / 2 with unit pitch
        const int q = i.col - (i.row - (i.row & 1)) / 2;
        return {static_cast<double>(q) + 0.5 * static_cast<double>(i.row),
                detail::half_sqrt3 * static_cast<double>(i.row)};
    }

    GridKind kind_;
    int n_;
    std::vector<Vec2> centers_;
    std::vector<std::int32_t> table_;
};

inline Topology build_grid(GridKind kind, int n) { return Topology(kind, n); }

}  // namespace wildfire
