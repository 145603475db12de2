#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <unordered_set>
#include <vector>

#include "ondemcpp/workspace.hpp"

namespace ondemcpp {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

struct Participant {
    int id;
    RobotState start;
};

/// Enumeration of robot states over a grid. Ground robots get 4 states per
/// cell (one per heading); aerial robots get 1.
struct StateSpace {
    GridDims dims;
    RobotKind kind;

    int states_per_cell() const { return kind == RobotKind::Turtlebot ? 4 : 1; }
    int state_count() const { return dims.cell_count() * states_per_cell(); }

    int index(RobotState s) const {
        int base = cell_index(dims, s.cell) * states_per_cell();
        return kind == RobotKind::Turtlebot ? base + static_cast<int>(s.heading) : base;
    }
    RobotState state(int idx) const {
        int per = states_per_cell();
        RobotState s{cell_at(dims, idx / per), Orientation::E};
        if (kind == RobotKind::Turtlebot) s.heading = static_cast<Orientation>(idx % per);
        return s;
    }
};

/// Shortest-path tree from one start state over the traversable cells
/// (every primitive costs 1, so breadth-first search is exact). Stores
/// distances and parents for the whole reachable set; paths to individual
/// goals are extracted on demand.
class SearchTree {
public:
    /// `traversable` is a per-cell mask indexed by cell_index. The
    /// expansion is hand-rolled (rather than going through successors())
    /// because this loop dominates whole-mission planning time; the
    /// expansion order matches successors() exactly: TR, TL, MN for ground
    /// and the E, N, W, S moves for aerial.
    SearchTree(const StateSpace& space, RobotState start, const std::vector<char>& traversable)
        : space_(space),
          dist_(space.state_count(), kUnreached),
          parent_(std::make_unique_for_overwrite<int[]>(space.state_count())) {
        const int w = space_.dims.width, h = space_.dims.height;
        // cell-index delta per direction, in Orientation order E, N, W, S
        const int delta[4] = {1, w, -1, -w};
        auto in_bounds = [&](int cell, int dir) {
            int x = cell % w, y = cell / w;
            switch (dir) {
                case 0: return x + 1 < w;
                case 1: return y + 1 < h;
                case 2: return x >= 1;
                default: return y >= 1;
            }
        };
        // flat FIFO: every state enters at most once, so a plain vector with
        // a read head beats a deque here
        std::vector<int> frontier;
        frontier.reserve(space_.state_count());
        frontier.push_back(space_.index(start));
        dist_[frontier.front()] = 0;
        parent_[frontier.front()] = -1;
        std::size_t head = 0;
        if (space_.kind == RobotKind::Turtlebot) {
            // clockwise: heading index e (E,N,W,S) turned right = ?
            // E->S, N->E, W->N, S->W in enum indices: 0->3, 1->0, 2->1, 3->2
            const int right[4] = {3, 0, 1, 2}, left[4] = {1, 2, 3, 0};
            while (head < frontier.size()) {
                int cur = frontier[head++];
                int cell = cur >> 2, head_dir = cur & 3;
                int next[3] = {(cell << 2) | right[head_dir], (cell << 2) | left[head_dir], -1};
                if (in_bounds(cell, head_dir) && traversable[cell + delta[head_dir]])
                    next[2] = ((cell + delta[head_dir]) << 2) | head_dir;
                for (int ni : next) {
                    if (ni < 0 || dist_[ni] != kUnreached) continue;
                    if (dist_[cur] + 1 >= kUnreached)
                        throw std::length_error("SearchTree: distance overflows 16 bits");
                    dist_[ni] = dist_[cur] + 1;
                    parent_[ni] = cur;
                    frontier.push_back(ni);
                }
            }
        } else {
            while (head < frontier.size()) {
                int cur = frontier[head++];
                for (int dir = 0; dir < 4; ++dir) {
                    if (!in_bounds(cur, dir)) continue;
                    int ni = cur + delta[dir];
                    if (!traversable[ni] || dist_[ni] != kUnreached) continue;
                    if (dist_[cur] + 1 >= kUnreached)
                        throw std::length_error("SearchTree: distance overflows 16 bits");
                    dist_[ni] = dist_[cur] + 1;
                    parent_[ni] = cur;
                    frontier.push_back(ni);
                }
            }
        }
    }

    /// Minimum moves to reach the goal cell at any heading; -1 if
    /// unreachable.
    int cost_to(Cell goal) const {
        std::uint16_t d = dist_[best_state_at(goal)];
        return d == kUnreached ? -1 : static_cast<int>(d);
    }

    /// Minimum-cost path to the goal cell, ending at the cheapest heading
    /// (ties broken by heading enumeration order). Unreachable → nullopt.
    std::optional<Path> path_to(Cell goal) const {
        int idx = best_state_at(goal);
        if (dist_[idx] == kUnreached) return std::nullopt;
        std::vector<RobotState> states;
        for (int cur = idx; cur != -1; cur = parent_[cur]) states.push_back(space_.state(cur));
        std::reverse(states.begin(), states.end());
        return Path(std::move(states));
    }

private:
    // 16-bit distances halve the hot loop's memory traffic; a shortest path
    // visits distinct states, and no supported grid has 0xFFFF of them on
    // one path, so the sentinel cannot collide with a real distance.
    static constexpr std::uint16_t kUnreached = 0xFFFF;

    int best_state_at(Cell goal) const {
        int per = space_.states_per_cell();
        int base = cell_index(space_.dims, goal) * per;
        int best = base;
        for (int k = 1; k < per; ++k)
            if (dist_[base + k] < dist_[best]) best = base + k;
        return best;
    }

    StateSpace space_;
    std::vector<std::uint16_t> dist_;
    std::unique_ptr<int[]> parent_;  // valid only where dist_ != kUnreached
};

namespace detail {

/// Multi-source breadth-first search backwards from every heading of `goal`
/// over the reversed motion graph; dist[s] becomes the forward cost from
/// state s to the goal cell (0xFFFF = unreachable). Buffers are caller-owned
/// so they can be reused across goals.
inline void reverse_goal_distances(const StateSpace& space, Cell goal,
                                   const std::vector<char>& traversable,
                                   std::vector<std::uint16_t>& dist, std::vector<int>& frontier) {
    constexpr std::uint16_t kUnreached = 0xFFFF;
    dist.assign(space.state_count(), kUnreached);
    frontier.clear();
    const int w = space.dims.width, h = space.dims.height;
    const int delta[4] = {1, w, -1, -w};
    auto in_bounds = [&](int cell, int dir) {
        int x = cell % w, y = cell / w;
        switch (dir) {
            case 0: return x + 1 < w;
            case 1: return y + 1 < h;
            case 2: return x >= 1;
            default: return y >= 1;
        }
    };
    int per = space.states_per_cell();
    int base = cell_index(space.dims, goal) * per;
    for (int k = 0; k < per; ++k) {
        dist[base + k] = 0;
        frontier.push_back(base + k);
    }
    std::size_t head = 0;
    if (space.kind == RobotKind::Turtlebot) {
        const int right[4] = {3, 0, 1, 2}, left[4] = {1, 2, 3, 0};
        while (head < frontier.size()) {
            int cur = frontier[head++];
            int cell = cur >> 2, head_dir = cur & 3;
            // forward predecessors: same cell at left[h] (would TR here), at
            // right[h] (would TL here), and the cell behind us at the same
            // heading (would move forward into this cell)
            int preds[3] = {(cell << 2) | left[head_dir], (cell << 2) | right[head_dir], -1};
            int opp = (head_dir + 2) & 3;
            if (in_bounds(cell, opp) && traversable[cell + delta[opp]])
                preds[2] = ((cell + delta[opp]) << 2) | head_dir;
            for (int ni : preds) {
                if (ni < 0 || dist[ni] != kUnreached) continue;
                if (dist[cur] + 1 >= kUnreached)
                    throw std::length_error("reverse_goal_distances: distance overflows 16 bits");
                dist[ni] = dist[cur] + 1;
                frontier.push_back(ni);
            }
        }
    } else {
        while (head < frontier.size()) {
            int cur = frontier[head++];
            for (int dir = 0; dir < 4; ++dir) {
                if (!in_bounds(cur, dir)) continue;
                int ni = cur + delta[dir];
                if (!traversable[ni] || dist[ni] != kUnreached) continue;
                if (dist[cur] + 1 >= kUnreached)
                    throw std::length_error("reverse_goal_distances: distance overflows 16 bits");
                dist[ni] = dist[cur] + 1;
                frontier.push_back(ni);
            }
        }
    }
}

}  // namespace detail

/// Δ and L_Δ: per-(participant, unassigned goal) optimal cost and path over
/// the traversable (goal ∪ covered) cells. Goals are indexed in row-major
/// cell order for determinism. Paths are extracted from per-participant
/// forward search trees built on first use, so missions that assign only a
/// few goals never pay for the unused trees.
struct CostPathMatrices {
    std::vector<Cell> goals;
    std::vector<std::vector<double>> costs;  // costs[i][j]; kInfCost = unreachable

    std::optional<Path> path(int participant_idx, int goal_idx) const {
        return tree(participant_idx).path_to(goals[goal_idx]);
    }

    const SearchTree& tree(int participant_idx) const {
        auto& slot = trees_[participant_idx];
        if (!slot) slot.emplace(space_, starts_[participant_idx], traversable_);
        return *slot;
    }

    StateSpace space_{};
    std::vector<char> traversable_;
    std::vector<RobotState> starts_;  // participant order
    mutable std::vector<std::optional<SearchTree>> trees_;
};

inline CostPathMatrices compute_optimal_costs(const WorkspaceView& global,
                                              const std::unordered_set<Cell>& reserved,
                                              const std::vector<Participant>& participants,
                                              RobotKind kind) {
    CostPathMatrices out;
    out.goals = unassigned_goals(global, reserved);
    out.space_ = StateSpace{global.dims(), kind};
    out.traversable_.resize(global.dims().cell_count());
    for (int i = 0; i < global.dims().cell_count(); ++i) {
        CellClass k = global.at(cell_at(global.dims(), i));
        out.traversable_[i] = (k == CellClass::Goal || k == CellClass::Covered) ? 1 : 0;
    }
    int n = static_cast<int>(participants.size());
    int m = static_cast<int>(out.goals.size());
    out.starts_.reserve(n);
    for (const Participant& p : participants) {
        if (!out.traversable_[cell_index(global.dims(), p.start.cell)])
            throw std::logic_error("compute_optimal_costs: participant " + std::to_string(p.id) +
                                   " starts at non-traversable cell " + to_string(p.start.cell));
        out.starts_.push_back(p.start);
    }
    out.trees_.resize(n);
    out.costs.assign(n, std::vector<double>(m, kInfCost));
    if (m < n) {
        // fewer goals than participants: one reverse search per goal fills a
        // whole cost column, and forward trees are only built later for the
        // participants that actually get a goal
        std::vector<std::uint16_t> dist;
        std::vector<int> frontier;
        frontier.reserve(out.space_.state_count());
        for (int j = 0; j < m; ++j) {
            detail::reverse_goal_distances(out.space_, out.goals[j], out.traversable_, dist,
                                           frontier);
            for (int i = 0; i < n; ++i) {
                std::uint16_t d = dist[out.space_.index(out.starts_[i])];
                if (d != 0xFFFF) out.costs[i][j] = static_cast<double>(d);
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const SearchTree& t = out.tree(i);
            for (int j = 0; j < m; ++j) {
                int c = t.cost_to(out.goals[j]);
                if (c != -1) out.costs[i][j] = static_cast<double>(c);
            }
        }
    }
    return out;
}

/// Participant index → assigned goal index, -1 = NULL.
using Assignment = std::vector<int>;

namespace detail {

/// Jonker-Volgenant shortest-augmenting-path assignment for an n×m matrix
/// with n ≤ m; returns the column assigned to each row. Deterministic:
/// ties resolve by column scan order.
inline std::vector<int> solve_rect_assignment(const std::vector<std::vector<double>>& a) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, kInfCost);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = kInfCost;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j]) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace detail

/// Min-total-cost one-to-one assignment of participants to goals.
/// Unreachable pairs carry a finite sentinel greater than any achievable
/// total, so the solver first maximizes the number of reachable matches and
/// then minimizes their cost sum; sentinel matches become NULL.
inline Assignment compute_optimal_assignments(const std::vector<std::vector<double>>& costs) {
    int n = static_cast<int>(costs.size());
    int m = n ? static_cast<int>(costs[0].size()) : 0;
    if (n == 0 || m == 0) return Assignment(n, -1);

    double max_finite = 0.0;
    for (const auto& row : costs)
        for (double c : row)
            if (c != kInfCost) max_finite = std::max(max_finite, c);
    double sentinel = max_finite * std::min(n, m) + 1.0;

    auto substitute = [&](double c) { return c == kInfCost ? sentinel : c; };
    std::vector<int> row_to_col;
    if (n <= m) {
        std::vector<std::vector<double>> a(n, std::vector<double>(m));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) a[i][j] = substitute(costs[i][j]);
        row_to_col = detail::solve_rect_assignment(a);
    } else {
        std::vector<std::vector<double>> at(m, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) at[j][i] = substitute(costs[i][j]);
        std::vector<int> col_to_row = detail::solve_rect_assignment(at);
        row_to_col.assign(n, -1);
        for (int j = 0; j < m; ++j)
            if (col_to_row[j] != -1) row_to_col[col_to_row[j]] = j;
    }
    for (int i = 0; i < n; ++i)
        if (row_to_col[i] != -1 && costs[i][row_to_col[i]] == kInfCost) row_to_col[i] = -1;
    return row_to_col;
}

/// Φ: assigned participants get their stored optimal path; NULL-assigned
/// ones get the zero-length path at their start (inactive).
inline std::vector<Path> get_optimal_paths(const Assignment& assignment,
                                           const CostPathMatrices& matrices,
                                           const std::vector<Participant>& participants) {
    std::vector<Path> phi;
    phi.reserve(participants.size());
    for (std::size_t i = 0; i < participants.size(); ++i) {
        if (assignment[i] == -1) {
            phi.emplace_back(participants[i].start);
            continue;
        }
        auto p = matrices.path(static_cast<int>(i), assignment[i]);
        if (!p)
            throw std::logic_error("get_optimal_paths: participant " +
                                   std::to_string(participants[i].id) +
                                   " assigned an unreachable goal");
        phi.push_back(std::move(*p));
    }
    return phi;
}

struct AssignmentBundle {
    CostPathMatrices matrices;
    Assignment gamma;
    std::vector<Path> phi;
};

inline AssignmentBundle cop_for_par(const WorkspaceView& global,
                                    const std::unordered_set<Cell>& reserved,
                                    const std::vector<Participant>& participants,
                                    RobotKind kind) {
    AssignmentBundle b;
    b.matrices = compute_optimal_costs(global, reserved, participants, kind);
    b.gamma = compute_optimal_assignments(b.matrices.costs);
    b.phi = get_optimal_paths(b.gamma, b.matrices, participants);
    return b;
}

}  // namespace ondemcpp
