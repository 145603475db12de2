#pragma once

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ondemcpp/assignment.hpp"

namespace ondemcpp {

enum class InfeasibleKind : std::uint8_t { Crossover, Nested };

struct InfeasiblePair {
    int i, j;  // participant indices, i < j
    InfeasibleKind kind;
};

/// Θ_r as a dense participant×participant matrix; entry [i][j] = 1 means
/// robot i must move before robot j.
using RelativePrecedence = std::vector<std::vector<std::uint8_t>>;

/// Participant indices in execution-priority order; nullopt when Θ_r is
/// cyclic.
using AbsolutePrecedence = std::optional<std::vector<int>>;

namespace detail {

inline bool cell_on_path(Cell c, const Path& p) {
    for (const RobotState& s : p.states)
        if (s.cell == c) return true;
    return false;
}

/// Occupied cell of a path prefixed by `offset` Halt states, at time t;
/// a robot holds its first state before starting and its final state
/// forever after finishing.
inline Cell position_at(const Path& p, int offset, int t) {
    int j = t - offset;
    if (j <= 0) return p.front().cell;
    if (j >= p.length()) return p.back().cell;
    return p.states[j].cell;
}

struct Trajectory {
    const Path* path;
    int offset;
};

/// Same-cell or head-on conflict between two offset trajectories, checked
/// over the joint horizon (both clamp to static endpoints beyond it).
inline bool trajectories_conflict(const Trajectory& a, const Trajectory& b) {
    int horizon = std::max(a.offset + a.path->length(), b.offset + b.path->length());
    for (int t = 0; t <= horizon; ++t) {
        Cell pa = position_at(*a.path, a.offset, t);
        Cell pb = position_at(*b.path, b.offset, t);
        if (pa == pb) return true;
        if (t < horizon && pa == position_at(*b.path, b.offset, t + 1) &&
            pb == position_at(*a.path, a.offset, t + 1))
            return true;
    }
    return false;
}

}  // namespace detail

namespace detail {

/// Sorted unique cells visited by a path; membership via binary search
/// (cheaper to build than a hash set in the repair loop).
inline std::vector<Cell> path_cells(const Path& p) {
    std::vector<Cell> cells;
    cells.reserve(p.states.size());
    for (const RobotState& s : p.states) cells.push_back(s.cell);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

/// Pair test against precomputed per-path cell sets; nullopt = feasible.
inline std::optional<InfeasibleKind> pair_infeasibility(
    int i, int j, const std::vector<Path>& omega, const Assignment& gamma,
    const std::vector<std::vector<Cell>>& cells) {
    auto active = [&](int k) { return gamma[k] != -1 && omega[k].length() > 0; };
    auto on = [&](Cell c, int k) { return std::binary_search(cells[k].begin(), cells[k].end(), c); };
    bool i_on_j = on(omega[i].front().cell, j);
    bool j_on_i = on(omega[j].front().cell, i);
    bool crossover = (!active(i) && active(j) && i_on_j) ||
                     (!active(j) && active(i) && j_on_i) ||
                     (active(i) && active(j) && i_on_j && j_on_i);
    if (crossover) return InfeasibleKind::Crossover;
    if (active(i) && active(j)) {
        bool i_in_j = i_on_j && on(omega[i].back().cell, j);
        bool j_in_i = j_on_i && on(omega[j].back().cell, i);
        if (i_in_j || j_in_i) return InfeasibleKind::Nested;
    }
    return std::nullopt;
}

}  // namespace detail

/// Flags the two path-pair shapes prioritization cannot serialize:
///  - crossover: an inactive participant sits on an active one's path, or
///    two participants' start cells lie on each other's paths;
///  - nested: one active participant's start and goal cells both lie on
///    another active one's path.
inline std::vector<InfeasiblePair> detect_infeasible_pairs_with(
    const std::vector<Path>& omega, const Assignment& gamma,
    const std::vector<std::vector<Cell>>& cells) {
    int n = static_cast<int>(omega.size());
    std::vector<InfeasiblePair> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (auto kind = detail::pair_infeasibility(i, j, omega, gamma, cells))
                out.push_back({i, j, *kind});
    return out;
}

inline std::vector<InfeasiblePair> detect_infeasible_pairs(const std::vector<Path>& omega,
                                                           const Assignment& gamma) {
    std::vector<std::vector<Cell>> cells;
    cells.reserve(omega.size());
    for (const Path& p : omega) cells.push_back(detail::path_cells(p));
    return detect_infeasible_pairs_with(omega, gamma, cells);
}

namespace detail {

/// Suffix of `donor` from state index `pos`, re-headed for the adopting
/// robot: ground robots prepend the minimal rotations aligning their
/// current heading with the suffix's junction heading (180° resolves as
/// two clockwise turns).
inline Path adopt_suffix(RobotState adopter, const Path& donor, int pos, RobotKind kind) {
    std::vector<RobotState> states{adopter};
    if (kind == RobotKind::Turtlebot) {
        Orientation target = donor.states[pos].heading;
        Orientation cur = adopter.heading;
        if (turn_right(cur) == target) {
            states.push_back({adopter.cell, target});
        } else if (turn_left(cur) == target) {
            states.push_back({adopter.cell, target});
        } else if (cur != target) {
            states.push_back({adopter.cell, turn_right(cur)});
            states.push_back({adopter.cell, target});
        }
    }
    for (std::size_t k = pos + 1; k < donor.states.size(); ++k) states.push_back(donor.states[k]);
    if (kind == RobotKind::Quadcopter)
        for (RobotState& s : states) s.heading = Orientation::E;
    return Path(std::move(states));
}

}  // namespace detail

/// Kill/revive repair: every active participant in an infeasible pair is
/// killed; each killed path is then walked from its goal backward and the
/// first unrevived participant standing on it that can adopt the remaining
/// suffix without creating a new infeasible pair inherits the goal.
/// Participants left unrevived become inactive with zero-length paths.
inline std::pair<Assignment, std::vector<Path>> repair_paths(
    Assignment gamma, std::vector<Path> omega, const std::vector<Participant>& participants,
    RobotKind kind) {
    int n = static_cast<int>(participants.size());
    // sorted cell sets kept in sync with omega across rounds (rebuilding
    // them every round dominated repair time on large instances)
    std::vector<std::vector<Cell>> cells;
    cells.reserve(n);
    for (const Path& p : omega) cells.push_back(detail::path_cells(p));
    std::unordered_map<Cell, int> at_cell;  // robots occupy distinct cells
    for (int q = 0; q < n; ++q) at_cell.emplace(participants[q].start.cell, q);

    for (int round = 0; round <= n; ++round) {
        auto pairs = detect_infeasible_pairs_with(omega, gamma, cells);
        if (pairs.empty()) return {std::move(gamma), std::move(omega)};

        std::vector<bool> killed(n, false);
        for (const InfeasiblePair& p : pairs) {
            if (gamma[p.i] != -1) killed[p.i] = true;
            if (gamma[p.j] != -1) killed[p.j] = true;
        }
        std::vector<Path> killed_path(n);
        std::vector<int> killed_goal(n, -1);
        std::vector<bool> unrevived(n, false);
        for (int i = 0; i < n; ++i) {
            if (killed[i]) {
                killed_path[i] = std::move(omega[i]);
                killed_goal[i] = gamma[i];
                omega[i] = Path(participants[i].start);
                cells[i] = {participants[i].start.cell};
                gamma[i] = -1;
            }
            if (gamma[i] == -1) unrevived[i] = true;
        }

        for (int k = 0; k < n; ++k) {
            if (!killed[k]) continue;
            const Path& donor = killed_path[k];
            bool revived = false;
            for (int pos = donor.length() - 1; pos >= 0 && !revived; --pos) {
                auto it = at_cell.find(donor.states[pos].cell);
                if (it != at_cell.end()) {
                    int q = it->second;
                    if (!unrevived[q]) continue;
                    Path candidate = detail::adopt_suffix(participants[q].start, donor, pos, kind);
                    if (candidate.length() == 0) continue;
                    Path saved_path = std::move(omega[q]);
                    std::vector<Cell> saved_cells = std::move(cells[q]);
                    int saved_goal = gamma[q];
                    omega[q] = std::move(candidate);
                    gamma[q] = killed_goal[k];
                    cells[q] = detail::path_cells(omega[q]);
                    bool clean = true;
                    for (int other = 0; other < n && clean; ++other)
                        if (other != q &&
                            detail::pair_infeasibility(std::min(other, q), std::max(other, q),
                                                       omega, gamma, cells))
                            clean = false;
                    if (clean) {
                        unrevived[q] = false;
                        revived = true;
                    } else {
                        omega[q] = std::move(saved_path);
                        gamma[q] = saved_goal;
                        cells[q] = std::move(saved_cells);
                    }
                }
            }
        }
    }
    // Round cap exceeded: repair oscillated; drop every remaining offender.
    for (;;) {
        auto pairs = detect_infeasible_pairs(omega, gamma);
        if (pairs.empty()) break;
        for (const InfeasiblePair& p : pairs)
            for (int i : {p.i, p.j})
                if (gamma[i] != -1) {
                    gamma[i] = -1;
                    omega[i] = Path(participants[i].start);
                }
    }
    return {std::move(gamma), std::move(omega)};
}

/// Θ_r[i][j] = 1 iff robot i's start cell lies on ω^j or robot j's goal
/// cell lies on ω^i: either way i must move through before j does.
inline RelativePrecedence compute_relative_precedences(const std::vector<Path>& omega,
                                                       const Assignment& gamma) {
    int n = static_cast<int>(omega.size());
    std::vector<std::vector<Cell>> cells;
    cells.reserve(n);
    for (const Path& p : omega) cells.push_back(detail::path_cells(p));
    auto on = [&](Cell c, int k) {
        return std::binary_search(cells[k].begin(), cells[k].end(), c);
    };
    RelativePrecedence theta(n, std::vector<std::uint8_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            bool start_i_on_j = omega[j].length() > 0 && on(omega[i].front().cell, j);
            bool goal_j_on_i =
                gamma[j] != -1 && omega[i].length() > 0 && on(omega[j].back().cell, i);
            if (start_i_on_j || goal_j_on_i) theta[i][j] = 1;
        }
    return theta;
}

/// Kahn's topological sort over Θ_r; ties broken by ascending participant
/// index (= ascending robot ID). A cycle yields nullopt, not an error.
inline AbsolutePrecedence compute_absolute_precedence(const RelativePrecedence& theta) {
    int n = static_cast<int>(theta.size());
    std::vector<int> indegree(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (theta[i][j]) ++indegree[j];
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n; ++i)
            if (!placed[i] && indegree[i] == 0) {
                pick = i;
                break;
            }
        if (pick == -1) return std::nullopt;
        placed[pick] = true;
        order.push_back(pick);
        for (int j = 0; j < n; ++j)
            if (theta[pick][j]) --indegree[j];
    }
    return order;
}

/// Inactivates one active participant on a precedence cycle: the cycle is
/// located by depth-first search from the smallest participant index, and
/// the member with the costliest path loses its goal (ties by smallest
/// index).
inline Assignment break_precedence_cycles(Assignment gamma, const RelativePrecedence& theta,
                                          const std::vector<Path>& omega) {
    int n = static_cast<int>(theta.size());
    std::vector<int> color(n, 0), stack;
    std::vector<int> cycle;
    std::function<bool(int)> dfs = [&](int u) {
        color[u] = 1;
        stack.push_back(u);
        for (int v = 0; v < n; ++v) {
            if (!theta[u][v]) continue;
            if (color[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (color[v] == 0 && dfs(v)) return true;
        }
        color[u] = 2;
        stack.pop_back();
        return false;
    };
    for (int s = 0; s < n && cycle.empty(); ++s)
        if (color[s] == 0) dfs(s);
    if (cycle.empty())
        throw std::logic_error("break_precedence_cycles: no cycle in precedence graph");

    int victim = -1;
    for (int i : cycle) {
        if (gamma[i] == -1) continue;
        if (victim == -1 || path_cost(omega[i]) > path_cost(omega[victim])) victim = i;
    }
    if (victim == -1)
        throw std::logic_error("break_precedence_cycles: cycle has no active participant");
    gamma[victim] = -1;
    return gamma;
}

namespace detail {

/// Occupancy index over the already-committed (higher-priority)
/// trajectories. Occupancy is stored as per-cell closed time intervals
/// (the last one of each trajectory extends forever), and cell-to-cell
/// moves as per-edge time lists, so the minimal feasible offset for a new
/// path falls out of one interval sweep instead of a per-candidate replay.
class OccupancyIndex {
public:
    static constexpr long long kForever = std::numeric_limits<long long>::max() / 4;

    void reserve(std::size_t expected_cells) {
        occ_.reserve(expected_cells);
        moves_.reserve(expected_cells);
    }

    /// Commits a trajectory: its start cell from t = 0 through the offset,
    /// each cell for its visit interval, its final cell forever.
    void add(const Path& p, int offset) {
        int run_start = 0;
        Cell run_cell = p.front().cell;
        for (int j = 1; j <= p.length(); ++j) {
            Cell c = p.states[j].cell;
            if (c == run_cell) continue;
            int t = offset + j;  // first time step spent in c
            occ_[run_cell].push_back({run_start, t - 1});
            moves_[edge_key(run_cell, c)].push_back(t - 1);
            run_cell = c;
            run_start = t;
        }
        occ_[run_cell].push_back({run_start, kForever});
    }

    /// Smallest offset in [0, max_bound] such that p prefixed by that many
    /// Halt states has no same-cell or head-on conflict with any committed
    /// trajectory (including our waiting phase at the start cell and our
    /// parked phase at the goal); -1 when no such offset exists.
    long long min_feasible_offset(const Path& p, long long max_bound) const {
        int L = p.length();
        std::vector<std::pair<long long, long long>> forbid;  // closed intervals over o
        auto add_forbid = [&](long long a, long long b) {
            if (b >= 0 && a <= b) forbid.emplace_back(std::max<long long>(a, 0), b);
        };
        // We hold the start cell for t in [0, o]: anything entering it at
        // or before o collides, so o must stay below its first occupancy.
        if (auto it = occ_.find(p.front().cell); it != occ_.end())
            for (const Interval& iv : it->second) add_forbid(iv.t0, kForever);
        // We park on the goal from t = o + L on.
        if (auto it = occ_.find(p.back().cell); it != occ_.end())
            for (const Interval& iv : it->second) {
                if (iv.t1 >= kForever) return -1;  // someone parks there first
                add_forbid(0, iv.t1 - L);
            }
        // En route we sit in cell j at time o + j.
        for (int j = 1; j < L; ++j) {
            auto it = occ_.find(p.states[j].cell);
            if (it == occ_.end()) continue;
            for (const Interval& iv : it->second)
                add_forbid(static_cast<long long>(iv.t0) - j,
                           iv.t1 >= kForever ? kForever : iv.t1 - j);
        }
        // Head-on: our move into cell j during [o+j-1, o+j] against a
        // committed move the opposite way at the same step.
        for (int j = 1; j <= L; ++j) {
            if (p.states[j].cell == p.states[j - 1].cell) continue;
            auto it = moves_.find(edge_key(p.states[j].cell, p.states[j - 1].cell));
            if (it == moves_.end()) continue;
            for (int t : it->second) add_forbid(static_cast<long long>(t) - j + 1,
                                                static_cast<long long>(t) - j + 1);
        }
        std::sort(forbid.begin(), forbid.end());
        long long o = 0;
        for (const auto& [a, b] : forbid) {
            if (a > o) break;
            o = std::max(o, b + 1);
        }
        return o <= max_bound ? o : -1;
    }

private:
    struct Interval {
        int t0;
        long long t1;
    };

    static std::uint64_t edge_key(Cell from, Cell to) {
        std::uint64_t k = from.x;
        k = (k << 16) | std::uint64_t(from.y);
        k = (k << 16) | std::uint64_t(to.x);
        k = (k << 16) | std::uint64_t(to.y);
        return k;
    }

    std::unordered_map<Cell, std::vector<Interval>> occ_;
    std::unordered_map<std::uint64_t, std::vector<int>> moves_;
};

}  // namespace detail

/// Start-time offsets Υ: processing participants in priority order, each
/// takes the smallest Halt-prefix length that avoids same-cell and head-on
/// conflicts with non-participants' remaining paths and with every
/// already-offset participant. When no offset within the bound helps (a
/// higher-priority robot parks on the path forever), the participant is
/// inactivated and the changed assignment tells the caller to re-run
/// repair.
inline std::pair<Assignment, std::vector<int>> compute_sto(
    Assignment gamma, const std::vector<Path>& omega, const std::vector<int>& order,
    const std::vector<Path>& sigma_rem, const std::vector<Participant>& participants) {
    int n = static_cast<int>(omega.size());
    std::vector<int> upsilon(n, 0);
    detail::OccupancyIndex idx;
    std::size_t expected = 0;
    for (const Path& p : sigma_rem) expected += p.states.size();
    for (const Path& p : omega) expected += p.states.size();
    idx.reserve(expected);
    long long bound = 1;
    for (const Path& p : sigma_rem) {
        idx.add(p, 0);
        bound += p.length();
    }

    for (int i : order) {
        if (gamma[i] == -1 || omega[i].length() == 0) {
            idx.add(Path(participants[i].start), 0);
            continue;
        }
        long long found = idx.min_feasible_offset(omega[i], bound);
        if (found == -1) {
            gamma[i] = -1;  // blockage is permanent; signal the outer loop
            idx.add(Path(participants[i].start), 0);
        } else {
            upsilon[i] = static_cast<int>(found);
            idx.add(omega[i], upsilon[i]);
            bound += found + omega[i].length();
        }
    }
    return {std::move(gamma), std::move(upsilon)};
}

/// σ'^i = Υ[i] repetitions of the start state prepended to ω^i; inactive
/// participants keep zero-length paths.
inline std::vector<Path> get_collision_free_paths(const std::vector<Path>& omega,
                                                  const Assignment& gamma,
                                                  const std::vector<int>& upsilon,
                                                  const std::vector<Participant>& participants) {
    std::vector<Path> sigma;
    sigma.reserve(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (gamma[i] == -1 || omega[i].length() == 0) {
            sigma.emplace_back(participants[i].start);
            continue;
        }
        std::vector<RobotState> states(upsilon[i], omega[i].front());
        states.insert(states.end(), omega[i].states.begin(), omega[i].states.end());
        sigma.emplace_back(std::move(states));
    }
    return sigma;
}

struct PriorityBundle {
    Assignment gamma;
    std::vector<Path> sigma;  // collision-free participant paths Σ'
};

/// Full repair → precedence → (cycle-break | offsets) loop; converges when
/// offsets succeed without changing the assignment. The iteration cap
/// turns a livelock into a loud defect instead of a silent hang.
inline PriorityBundle cfp_for_par(Assignment gamma, std::vector<Path> phi,
                                  const std::vector<Participant>& participants,
                                  const std::vector<Path>& sigma_rem, RobotKind kind) {
    int n = static_cast<int>(participants.size());
    int cap = 4 * n + 4;
    std::vector<Path> omega;
    std::vector<int> upsilon;
    for (int iter = 0; iter < cap; ++iter) {
        std::tie(gamma, omega) = repair_paths(gamma, std::move(phi), participants, kind);
        auto theta = compute_relative_precedences(omega, gamma);
        auto order = compute_absolute_precedence(theta);
        if (!order) {
            gamma = break_precedence_cycles(std::move(gamma), theta, omega);
            for (std::size_t i = 0; i < omega.size(); ++i)
                if (gamma[i] == -1) omega[i] = Path(participants[i].start);
            phi = std::move(omega);
            continue;
        }
        auto [gamma2, ups] = compute_sto(gamma, omega, *order, sigma_rem, participants);
        if (gamma2 == gamma) {
            upsilon = std::move(ups);
            std::vector<Path> sigma = get_collision_free_paths(omega, gamma, upsilon, participants);
            return {std::move(gamma), std::move(sigma)};
        }
        gamma = std::move(gamma2);
        for (std::size_t i = 0; i < omega.size(); ++i)
            if (gamma[i] == -1) omega[i] = Path(participants[i].start);
        phi = std::move(omega);
    }
    std::string dump = "cfp_for_par: no convergence after " + std::to_string(cap) +
                       " iterations; active participants:";
    for (int i = 0; i < n; ++i)
        if (gamma[i] != -1)
            dump += " " + std::to_string(participants[i].id) + "@" +
                    to_string(participants[i].start.cell);
    throw std::runtime_error(dump);
}

}  // namespace ondemcpp
