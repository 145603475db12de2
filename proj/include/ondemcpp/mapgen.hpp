#pragma once

#include <random>

#include "ondemcpp/workspace.hpp"

namespace ondemcpp {

namespace detail {

/// Keeps only the largest 4-connected free component (ties: the component
/// containing the lowest cell index), turning the rest into obstacles.
inline void keep_largest_component(GroundTruthMap& map) {
    int n = map.dims.cell_count();
    std::vector<int> comp(n, -1);
    int best_comp = -1, best_size = 0, next = 0;
    for (int s = 0; s < n; ++s) {
        if (!map.free[s] || comp[s] != -1) continue;
        int size = 0;
        std::vector<int> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            ++size;
            for (Cell nb : orthogonal_neighbors(cell_at(map.dims, i))) {
                if (!map.is_free(nb)) continue;
                int j = cell_index(map.dims, nb);
                if (comp[j] == -1) {
                    comp[j] = next;
                    stack.push_back(j);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_comp = next;
        }
        ++next;
    }
    for (int i = 0; i < n; ++i)
        if (map.free[i] && comp[i] != best_comp) map.free[i] = false;
}

}  // namespace detail

/// Perfect maze with corridors `corridor` cells wide and 1-cell walls,
/// carved by a seeded recursive backtracker; connected by construction.
inline GroundTruthMap generate_maze(int width, int height, int corridor, std::uint32_t seed) {
    int p = corridor + 1;
    int mx = (width + 1) / p, my = (height + 1) / p;
    if (mx < 2 || my < 2) throw std::invalid_argument("generate_maze: grid too small");
    GroundTruthMap map;
    map.dims = GridDims{width, height};
    map.free.assign(static_cast<std::size_t>(width) * height, false);

    auto carve = [&](int x0, int y0, int w, int h) {
        for (int y = y0; y < y0 + h; ++y)
            for (int x = x0; x < x0 + w; ++x)
                if (map.dims.contains(x, y)) map.free[cell_index(map.dims, Cell{x, y})] = true;
    };
    auto room = [&](int i, int j) { carve(i * p + 1, j * p + 1, corridor, corridor); };

    std::mt19937 engine(seed);
    std::vector<bool> visited(static_cast<std::size_t>(mx) * my, false);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    visited[0] = true;
    room(0, 0);
    constexpr int dx[] = {1, 0, -1, 0}, dy[] = {0, 1, 0, -1};
    while (!stack.empty()) {
        auto [ci, cj] = stack.back();
        std::vector<int> dirs;
        for (int d = 0; d < 4; ++d) {
            int ni = ci + dx[d], nj = cj + dy[d];
            if (ni >= 0 && ni < mx && nj >= 0 && nj < my && !visited[nj * mx + ni])
                dirs.push_back(d);
        }
        if (dirs.empty()) {
            stack.pop_back();
            continue;
        }
        int d = dirs[engine() % dirs.size()];
        int ni = ci + dx[d], nj = cj + dy[d];
        visited[nj * mx + ni] = true;
        room(ni, nj);
        // carve the wall strip between the two rooms, `corridor` wide
        if (dx[d] != 0) {
            int wall_x = (dx[d] > 0 ? ci * p + 1 + corridor : ni * p + 1 + corridor);
            carve(wall_x, cj * p + 1, 1, corridor);
        } else {
            int wall_y = (dy[d] > 0 ? cj * p + 1 + corridor : nj * p + 1 + corridor);
            carve(ci * p + 1, wall_y, corridor, 1);
        }
        stack.push_back({ni, nj});
    }
    return map;
}

/// Cave-like workspace: seeded random fill smoothed by cellular-automata
/// passes, then trimmed to its largest connected component.
inline GroundTruthMap generate_cavern(int width, int height, std::uint32_t seed) {
    GroundTruthMap map;
    map.dims = GridDims{width, height};
    map.free.assign(static_cast<std::size_t>(width) * height, false);
    std::mt19937 engine(seed);
    for (int i = 0; i < map.dims.cell_count(); ++i) map.free[i] = engine() % 100 >= 45;

    for (int pass = 0; pass < 5; ++pass) {
        std::vector<bool> next(map.free.size());
        for (int y = 1; y <= height; ++y) {
            for (int x = 1; x <= width; ++x) {
                int walls = 0;
                for (int ddy = -1; ddy <= 1; ++ddy)
                    for (int ddx = -1; ddx <= 1; ++ddx) {
                        if (ddx == 0 && ddy == 0) continue;
                        int nx = x + ddx, ny = y + ddy;
                        if (!map.dims.contains(nx, ny) ||
                            !map.free[cell_index(map.dims, Cell{nx, ny})])
                            ++walls;
                    }
                next[cell_index(map.dims, Cell{x, y})] = walls < 5;
            }
        }
        map.free = std::move(next);
    }
    detail::keep_largest_component(map);
    return map;
}

/// City-like workspace: open streets with rectangular building blocks on a
/// jittered grid; trimmed to its largest connected component.
inline GroundTruthMap generate_city(int width, int height, std::uint32_t seed) {
    GroundTruthMap map;
    map.dims = GridDims{width, height};
    map.free.assign(static_cast<std::size_t>(width) * height, true);
    std::mt19937 engine(seed);
    int period = 18;
    for (int by = 0; by * period + 3 < height; ++by) {
        for (int bx = 0; bx * period + 3 < width; ++bx) {
            int w = 8 + static_cast<int>(engine() % 8);
            int h = 8 + static_cast<int>(engine() % 8);
            int ox = 3 + static_cast<int>(engine() % 4);
            int oy = 3 + static_cast<int>(engine() % 4);
            int x0 = bx * period + ox, y0 = by * period + oy;
            for (int y = y0; y < std::min(y0 + h, height); ++y)
                for (int x = x0; x < std::min(x0 + w, width); ++x)
                    map.free[cell_index(map.dims, Cell{x + 1, y + 1})] = false;
        }
    }
    detail::keep_largest_component(map);
    return map;
}

}  // namespace ondemcpp
