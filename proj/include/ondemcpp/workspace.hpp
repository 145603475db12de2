#pragma once

#include <array>
#include <unordered_set>
#include <vector>

#include "ondemcpp/grid.hpp"
#include "ondemcpp/robots.hpp"

namespace ondemcpp {

/// Classification of every cell as seen by one robot (local view) or by the
/// planner (global view). Stored as one class per cell, so the
/// unexplored/obstacle/goal/covered sets partition the grid by construction.
class WorkspaceView {
public:
    WorkspaceView() = default;
    explicit WorkspaceView(GridDims dims)
        : dims_(dims), cls_(static_cast<std::size_t>(dims.cell_count()), CellClass::Unexplored) {}

    const GridDims& dims() const { return dims_; }

    CellClass at(Cell c) const { return cls_[cell_index(dims_, c)]; }
    void set(Cell c, CellClass k) { cls_[cell_index(dims_, c)] = k; }

    std::vector<Cell> cells_of(CellClass k) const {
        std::vector<Cell> out;
        for (int i = 0; i < dims_.cell_count(); ++i)
            if (cls_[i] == k) out.push_back(cell_at(dims_, i));
        return out;
    }

    int count_of(CellClass k) const {
        int n = 0;
        for (CellClass c : cls_)
            if (c == k) ++n;
        return n;
    }

    bool operator==(const WorkspaceView&) const = default;

private:
    GridDims dims_;
    std::vector<CellClass> cls_;
};

/// The real workspace the simulator knows and robots discover. `free[i]`
/// indexes cells row-major via cell_index.
struct GroundTruthMap {
    GridDims dims;
    std::vector<bool> free;

    bool is_free(Cell c) const { return dims.contains(c.x, c.y) && free[cell_index(dims, c)]; }

    int free_count() const {
        int n = 0;
        for (bool f : free)
            if (f) ++n;
        return n;
    }
};

inline std::array<Cell, 4> orthogonal_neighbors(Cell c) {
    return {Cell{c.x + 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x - 1, c.y}, Cell{c.x, c.y - 1}};
}

/// True iff the free cells form a single 4-connected component.
inline bool check_connectivity(const GroundTruthMap& map) {
    int total = map.free_count();
    if (total <= 1) return true;
    int start = -1;
    for (int i = 0; i < map.dims.cell_count(); ++i)
        if (map.free[i]) {
            start = i;
            break;
        }
    std::vector<bool> seen(map.free.size(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    int reached = 0;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        ++reached;
        for (Cell n : orthogonal_neighbors(cell_at(map.dims, i))) {
            if (!map.is_free(n)) continue;
            int j = cell_index(map.dims, n);
            if (!seen[j]) {
                seen[j] = true;
                stack.push_back(j);
            }
        }
    }
    return reached == total;
}

/// Classifies the robot's cell as covered and its four orthogonal neighbors
/// from the rangefinder model: a neighbor holding another robot is
/// indistinguishable from an obstacle. Already-covered cells are terminal.
inline void sense_at(WorkspaceView& view, RobotState state, const GroundTruthMap& truth,
                     const std::unordered_set<Cell>& occupied) {
    if (!truth.is_free(state.cell))
        throw std::invalid_argument("sense_at: robot at non-free cell " + to_string(state.cell));
    view.set(state.cell, CellClass::Covered);
    for (Cell n : orthogonal_neighbors(state.cell)) {
        if (!truth.dims.contains(n.x, n.y)) continue;
        if (view.at(n) == CellClass::Covered) continue;
        if (!truth.is_free(n) || occupied.count(n))
            view.set(n, CellClass::Obstacle);
        else
            view.set(n, CellClass::Goal);
    }
}

/// Fresh local view with the start cell covered and its neighbors sensed.
inline WorkspaceView init_localview(RobotState start, const GroundTruthMap& truth,
                                    const std::unordered_set<Cell>& occupied) {
    if (!truth.dims.contains(start.cell.x, start.cell.y))
        throw std::out_of_range("init_localview: start " + to_string(start.cell) +
                                " outside grid");
    WorkspaceView view(truth.dims);
    sense_at(view, start, truth, occupied);
    return view;
}

/// Merges a robot's local view into the planner's global view:
///  - locally covered cells become covered (overriding goal/obstacle);
///  - local goals and obstacles only fill globally unexplored cells.
/// Covered is terminal, so fusion is monotone and idempotent.
inline void fuse_local_into_global(WorkspaceView& global, const WorkspaceView& local) {
    if (global.dims() != local.dims())
        throw std::invalid_argument("fuse_local_into_global: dimension mismatch");
    for (int i = 0; i < global.dims().cell_count(); ++i) {
        Cell c = cell_at(global.dims(), i);
        CellClass lc = local.at(c);
        if (lc == CellClass::Covered) {
            global.set(c, CellClass::Covered);
        } else if (lc == CellClass::Goal || lc == CellClass::Obstacle) {
            if (global.at(c) == CellClass::Unexplored) global.set(c, lc);
        }
    }
}

/// Goals not reserved for a non-participant's remaining path. A reserved
/// cell may already have been covered by a robot passing through it; only a
/// reserved cell that is unexplored or an obstacle indicates corrupted
/// bookkeeping.
inline std::vector<Cell> unassigned_goals(const WorkspaceView& global,
                                          const std::unordered_set<Cell>& reserved) {
    for (Cell c : reserved) {
        CellClass k = global.at(c);
        if (k != CellClass::Goal && k != CellClass::Covered)
            throw std::logic_error("unassigned_goals: reserved cell " + to_string(c) + " is " +
                                   to_string(k));
    }
    std::vector<Cell> out;
    for (int i = 0; i < global.dims().cell_count(); ++i) {
        Cell c = cell_at(global.dims(), i);
        if (global.at(c) == CellClass::Goal && !reserved.count(c)) out.push_back(c);
    }
    return out;
}

}  // namespace ondemcpp
