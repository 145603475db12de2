#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ondemcpp {

/// Grid dimensions. Cells are 1-based pairs (x, y) with x in [1, width]
/// and y in [1, height]. East = +x, North = +y.
struct GridDims {
    int width = 0;
    int height = 0;

    int cell_count() const { return width * height; }
    bool contains(int x, int y) const {
        return x >= 1 && x <= width && y >= 1 && y <= height;
    }
    bool operator==(const GridDims&) const = default;
};

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell&) const = default;
};

inline int cell_index(const GridDims& dims, Cell c) {
    assert(dims.contains(c.x, c.y));
    return (c.y - 1) * dims.width + (c.x - 1);
}

inline Cell cell_at(const GridDims& dims, int index) {
    return Cell{index % dims.width + 1, index / dims.width + 1};
}

enum class CellClass : std::uint8_t { Unexplored, Obstacle, Goal, Covered };

inline const char* to_string(CellClass c) {
    switch (c) {
        case CellClass::Unexplored: return "unexplored";
        case CellClass::Obstacle: return "obstacle";
        case CellClass::Goal: return "goal";
        case CellClass::Covered: return "covered";
    }
    return "?";
}

inline std::string to_string(Cell c) {
    return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
}

}  // namespace ondemcpp

template <>
struct std::hash<ondemcpp::Cell> {
    std::size_t operator()(const ondemcpp::Cell& c) const noexcept {
        return std::hash<std::int64_t>{}((std::int64_t(c.x) << 32) ^ std::int64_t(c.y));
    }
};
