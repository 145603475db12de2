#pragma once

#include <functional>
#include <random>

#include "ondemcpp/map_io.hpp"
#include "ondemcpp/planner.hpp"

namespace ondemcpp {

struct RobotAgent {
    int id;
    RobotKind kind;
    RobotState state;
    WorkspaceView local;
};

struct HorizonTraceRecord {
    int h;
    int lambda;
    std::vector<int> active_ids;
    double plan_seconds;
    int participants;
    /// Some robot finished its whole planned path on a goal this horizon.
    bool progress = false;
    /// Executed state sequences of the active robots, each of length λ+1.
    std::map<int, std::vector<RobotState>> paths;
};

struct MissionTrace {
    RobotKind kind;
    int robot_count = 0;
    bool complete = false;
    /// Planning duration of the final (degenerate) horizon that detected
    /// completion; the executed horizons live in `records`.
    double completion_plan_seconds = 0.0;
    std::vector<HorizonTraceRecord> records;
    std::map<int, Path> full_paths;  // Π: per-robot concatenation over all horizons
};

enum class ViolationKind : std::uint8_t { Obstacle, SameCell, HeadOn };

struct Violation {
    int t;
    int robot_a;
    int robot_b;  // -1 for obstacle violations
    Cell cell;
    ViolationKind kind;
};

using CollisionReport = std::vector<Violation>;

/// Seeded deployment on distinct free cells. All free cells are shuffled
/// once per seed and the first R taken, so for a fixed seed the R-robot
/// deployment is a prefix of the R'-robot one (R < R'). Ground robots get
/// per-robot seeded orientations that likewise do not depend on R.
inline std::vector<RobotAgent> deploy_robots(const GroundTruthMap& map, int robot_count,
                                             RobotKind kind, std::uint32_t seed) {
    std::vector<int> free_cells;
    for (int i = 0; i < map.dims.cell_count(); ++i)
        if (map.free[i]) free_cells.push_back(i);
    if (robot_count < 1 || robot_count > static_cast<int>(free_cells.size()))
        throw std::invalid_argument("deploy_robots: R=" + std::to_string(robot_count) + " with " +
                                    std::to_string(free_cells.size()) + " free cells");
    // Fisher-Yates with engine() % k: pinned across platforms, unlike
    // std::shuffle / uniform_int_distribution whose outputs are
    // implementation-defined.
    std::mt19937 engine(seed);
    for (std::size_t i = free_cells.size() - 1; i > 0; --i) {
        std::size_t j = engine() % (i + 1);
        std::swap(free_cells[i], free_cells[j]);
    }
    std::vector<RobotAgent> agents;
    for (int r = 0; r < robot_count; ++r) {
        RobotState s{cell_at(map.dims, free_cells[r]), Orientation::E};
        if (kind == RobotKind::Turtlebot) {
            std::seed_seq sq{seed, static_cast<std::uint32_t>(r)};
            std::mt19937 og(sq);
            s.heading = static_cast<Orientation>(og() % 4);
        }
        agents.push_back(RobotAgent{r + 1, kind, s, WorkspaceView(map.dims)});
    }
    return agents;
}

/// Replays per-robot full paths on a common timeline (shorter paths hold
/// their final state) and reports every obstacle occupancy, same-cell
/// pair, and head-on swap. Violations are data, not errors.
inline CollisionReport verify_trajectories(const std::map<int, Path>& full_paths,
                                           const GroundTruthMap& map) {
    CollisionReport report;
    std::vector<int> ids;
    int horizon = 0;
    for (auto& [id, p] : full_paths) {
        ids.push_back(id);
        horizon = std::max(horizon, p.length());
    }
    auto pos = [&](int id, int t) {
        const Path& p = full_paths.at(id);
        return p.states[std::min(t, p.length())].cell;
    };
    for (int t = 0; t <= horizon; ++t) {
        for (std::size_t a = 0; a < ids.size(); ++a) {
            Cell ca = pos(ids[a], t);
            if (!map.is_free(ca))
                report.push_back({t, ids[a], -1, ca, ViolationKind::Obstacle});
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                Cell cb = pos(ids[b], t);
                if (ca == cb)
                    report.push_back({t, ids[a], ids[b], ca, ViolationKind::SameCell});
                if (t < horizon && ca == pos(ids[b], t + 1) && cb == pos(ids[a], t + 1))
                    report.push_back({t, ids[a], ids[b], ca, ViolationKind::HeadOn});
            }
        }
    }
    return report;
}

/// Full mission: robots request, the planner replies with horizon paths,
/// active robots execute them in lockstep (one primitive per simulated
/// step, sensing after every step), until the planner declares coverage
/// complete. Inactive robots hold position and are seen as occupancy by
/// the others.
inline MissionTrace run_mission(
    const GroundTruthMap& map, std::vector<RobotAgent>& agents, CoveragePlanner& planner,
    int max_horizons,
    const std::function<void(const CoveragePlanner&, const std::map<int, ResponseMessage>&)>&
        horizon_observer = {}) {
    MissionTrace trace;
    trace.kind = agents.empty() ? RobotKind::Quadcopter : agents.front().kind;
    trace.robot_count = static_cast<int>(agents.size());

    auto agent_by_id = [&](int id) -> RobotAgent& {
        for (RobotAgent& a : agents)
            if (a.id == id) return a;
        throw std::logic_error("run_mission: no agent with id " + std::to_string(id));
    };
    auto occupied_cells = [&]() {
        std::unordered_set<Cell> occ;
        for (const RobotAgent& a : agents) occ.insert(a.state.cell);
        return occ;
    };

    {
        auto occ = occupied_cells();
        for (RobotAgent& a : agents) {
            auto others = occ;
            others.erase(a.state.cell);
            a.local = init_localview(a.state, map, others);
        }
    }

    std::vector<int> requesters;
    for (const RobotAgent& a : agents) requesters.push_back(a.id);
    std::sort(requesters.begin(), requesters.end());

    for (int h = 1;; ++h) {
        if (h > max_horizons)
            throw std::runtime_error("run_mission: exceeded max_horizons=" +
                                     std::to_string(max_horizons) + " without completing");
        std::optional<std::map<int, ResponseMessage>> responses;
        for (int id : requesters) {
            RobotAgent& a = agent_by_id(id);
            responses = planner.handle_request(RequestMessage{id, a.state, a.local});
        }
        if (!responses)
            throw std::logic_error("run_mission: planner did not trigger after all requests");
        if (horizon_observer) horizon_observer(planner, *responses);
        if (!responses->empty() && responses->begin()->second.coverage_complete) {
            trace.complete = true;
            trace.completion_plan_seconds = planner.horizons().back().planning_seconds;
            break;
        }

        const HorizonResult& hr = planner.horizons().back();
        HorizonTraceRecord rec;
        rec.h = h;
        rec.lambda = hr.lambda;
        rec.plan_seconds = hr.planning_seconds;
        rec.participants = hr.participants_count;
        rec.progress = hr.progress;
        for (auto& [id, resp] : *responses) {
            rec.active_ids.push_back(id);
            rec.paths[id] = {agent_by_id(id).state};
            if (!(resp.path.front() == agent_by_id(id).state))
                throw std::logic_error("run_mission: planned path for robot " +
                                       std::to_string(id) + " does not start at its state");
        }

        for (int step = 1; step <= hr.lambda; ++step) {
            std::map<int, Cell> prev_cell;
            for (const RobotAgent& a : agents) prev_cell[a.id] = a.state.cell;
            for (int id : rec.active_ids) {
                RobotAgent& a = agent_by_id(id);
                const Path& p = responses->at(id).path;
                RobotState next = p.states[step];
                if (!map.is_free(next.cell))
                    throw std::runtime_error("run_mission: robot " + std::to_string(id) +
                                             " directed into obstacle at " + to_string(next.cell));
                a.state = next;
                rec.paths[id].push_back(next);
            }
            // Mid-run safety: same-cell and head-on checks over all robots.
            std::unordered_set<Cell> now;
            for (const RobotAgent& a : agents) {
                if (!now.insert(a.state.cell).second)
                    throw std::runtime_error("run_mission: same-cell collision at " +
                                             to_string(a.state.cell) + ", horizon " +
                                             std::to_string(h) + " step " + std::to_string(step));
            }
            for (const RobotAgent& a : agents)
                for (const RobotAgent& b : agents)
                    if (a.id < b.id && a.state.cell == prev_cell[b.id] &&
                        b.state.cell == prev_cell[a.id] && a.state.cell != b.state.cell)
                        throw std::runtime_error("run_mission: head-on swap between robots " +
                                                 std::to_string(a.id) + " and " +
                                                 std::to_string(b.id));
            auto occ = occupied_cells();
            for (int id : rec.active_ids) {
                RobotAgent& a = agent_by_id(id);
                auto others = occ;
                others.erase(a.state.cell);
                sense_at(a.local, a.state, map, others);
            }
        }
        trace.records.push_back(std::move(rec));
        requesters = trace.records.back().active_ids;
    }

    for (const RobotAgent& a : agents) {
        Path p = planner.accumulated_path(a.id);
        if (p.states.empty()) p = Path(a.state);  // mission ended before any horizon ran
        trace.full_paths[a.id] = std::move(p);
    }
    return trace;
}

}  // namespace ondemcpp
