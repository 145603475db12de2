#pragma once

// Shared test utilities: random connected maps, and independent oracles for
// shortest-path costs and minimum-cost assignment. The oracles deliberately
// use the slow-but-obvious formulation (priority-queue search over the
// public successors() function, permutation enumeration) so they share no
// code with the implementations under test.

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "ondemcpp/mapgen.hpp"
#include "ondemcpp/ondemcpp.hpp"

namespace testutil {

using namespace ondemcpp;

/// Random map with roughly `obstacle_pct`% blocked cells, trimmed to its
/// largest 4-connected free component.
inline GroundTruthMap random_map(int width, int height, int obstacle_pct, std::uint32_t seed) {
    GroundTruthMap map;
    map.dims = GridDims{width, height};
    map.free.assign(static_cast<std::size_t>(width) * height, false);
    std::mt19937 engine(seed);
    for (int i = 0; i < map.dims.cell_count(); ++i)
        map.free[i] = static_cast<int>(engine() % 100) >= obstacle_pct;
    detail::keep_largest_component(map);
    return map;
}

inline std::vector<Cell> free_cells(const GroundTruthMap& map) {
    std::vector<Cell> out;
    for (int i = 0; i < map.dims.cell_count(); ++i)
        if (map.free[i]) out.push_back(cell_at(map.dims, i));
    return out;
}

/// A fully explored view of the map: `start` covered, every other free cell
/// a goal, obstacles marked.
inline WorkspaceView explored_view(const GroundTruthMap& map, Cell start) {
    WorkspaceView view(map.dims);
    for (int i = 0; i < map.dims.cell_count(); ++i) {
        Cell c = cell_at(map.dims, i);
        view.set(c, map.free[i] ? CellClass::Goal : CellClass::Obstacle);
    }
    view.set(start, CellClass::Covered);
    return view;
}

/// Uniform-cost search over the public successor function; returns the
/// minimal move count from `start` to every cell (-1 = unreachable),
/// minimized over arrival headings for ground robots.
inline std::vector<int> ucs_costs(const GroundTruthMap& map, RobotState start, RobotKind kind,
                                  const std::function<bool(Cell)>& traversable) {
    StateSpace space{map.dims, kind};
    std::vector<int> dist(space.state_count(), -1);
    using Entry = std::pair<int, int>;  // (cost, state index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[space.index(start)] = 0;
    open.emplace(0, space.index(start));
    while (!open.empty()) {
        auto [d, idx] = open.top();
        open.pop();
        if (d > dist[idx]) continue;
        for (auto& [m, next] : successors(space.state(idx), kind, traversable)) {
            int ni = space.index(next);
            int nd = d + motion_cost(m);
            if (dist[ni] == -1 || nd < dist[ni]) {
                dist[ni] = nd;
                open.emplace(nd, ni);
            }
        }
    }
    std::vector<int> per_cell(map.dims.cell_count(), -1);
    for (int c = 0; c < map.dims.cell_count(); ++c) {
        int best = -1;
        for (int k = 0; k < space.states_per_cell(); ++k) {
            int d = dist[c * space.states_per_cell() + k];
            if (d != -1 && (best == -1 || d < best)) best = d;
        }
        per_cell[c] = best;
    }
    return per_cell;
}

/// Objective value achieved by an assignment under the same
/// infinity-to-sentinel substitution the solver uses: unmatched slots on
/// the smaller side each cost one sentinel.
inline double assignment_objective(const std::vector<std::vector<double>>& costs,
                                   const Assignment& gamma) {
    int n = static_cast<int>(costs.size());
    int m = n ? static_cast<int>(costs[0].size()) : 0;
    double max_finite = 0.0;
    for (const auto& row : costs)
        for (double c : row)
            if (c != kInfCost) max_finite = std::max(max_finite, c);
    double sentinel = max_finite * std::min(n, m) + 1.0;
    double total = 0.0;
    int matched = 0;
    for (int i = 0; i < n; ++i)
        if (gamma[i] != -1) {
            total += costs[i][gamma[i]];
            ++matched;
        }
    return total + sentinel * (std::min(n, m) - matched);
}

/// Brute-force optimum of the same objective: every slot of the smaller
/// side matched, infinities substituted by the sentinel, minimized over all
/// injections.
inline double brute_force_assignment_cost(const std::vector<std::vector<double>>& costs) {
    int n = static_cast<int>(costs.size());
    int m = n ? static_cast<int>(costs[0].size()) : 0;
    double max_finite = 0.0;
    for (const auto& row : costs)
        for (double c : row)
            if (c != kInfCost) max_finite = std::max(max_finite, c);
    double sentinel = max_finite * std::min(n, m) + 1.0;
    auto subst = [&](double c) { return c == kInfCost ? sentinel : c; };

    int big = std::max(n, m);
    std::vector<int> perm(big);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        if (n <= m) {
            for (int i = 0; i < n; ++i) total += subst(costs[i][perm[i]]);
        } else {
            for (int j = 0; j < m; ++j) total += subst(costs[perm[j]][j]);
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Pairwise conflict check over offset participant paths plus committed
/// remainder paths, via the reference trajectory comparison.
inline bool offsets_conflict_free(const std::vector<Path>& omega, const Assignment& gamma,
                                  const std::vector<int>& upsilon,
                                  const std::vector<Path>& sigma_rem,
                                  const std::vector<Participant>& participants) {
    std::vector<detail::Trajectory> trajs;
    std::vector<Path> parked;  // keep zero-length stand-ins alive
    parked.reserve(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (gamma[i] == -1 || omega[i].length() == 0) {
            parked.emplace_back(participants[i].start);
            trajs.push_back({&parked.back(), 0});
        } else {
            trajs.push_back({&omega[i], upsilon[i]});
        }
    }
    for (const Path& p : sigma_rem) trajs.push_back({&p, 0});
    for (std::size_t a = 0; a < trajs.size(); ++a)
        for (std::size_t b = a + 1; b < trajs.size(); ++b)
            if (detail::trajectories_conflict(trajs[a], trajs[b])) return false;
    return true;
}

}  // namespace testutil
