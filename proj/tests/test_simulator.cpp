#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ondemcpp;
using namespace testutil;

namespace {

Path cells_path(std::initializer_list<Cell> cells) {
    std::vector<RobotState> states;
    for (Cell c : cells) states.push_back(RobotState{c});
    return Path(std::move(states));
}

}  // namespace

TEST_CASE("deployment is deterministic and nested across fleet sizes") {
    GroundTruthMap map = random_map(20, 20, 20, 11);
    for (RobotKind kind : {RobotKind::Turtlebot, RobotKind::Quadcopter}) {
        auto a = deploy_robots(map, 8, kind, 3);
        auto b = deploy_robots(map, 8, kind, 3);
        for (int i = 0; i < 8; ++i) {
            REQUIRE(a[i].id == b[i].id);
            REQUIRE(a[i].state == b[i].state);
        }
        // distinct cells
        std::unordered_set<Cell> cells;
        for (const RobotAgent& r : a) REQUIRE(cells.insert(r.state.cell).second);
        // the 4-robot deployment is a prefix of the 8-robot one
        auto small = deploy_robots(map, 4, kind, 3);
        for (int i = 0; i < 4; ++i) REQUIRE(small[i].state == a[i].state);
        // a different seed lands differently
        auto other = deploy_robots(map, 8, kind, 4);
        bool same = true;
        for (int i = 0; i < 8; ++i) same = same && other[i].state == a[i].state;
        REQUIRE_FALSE(same);
    }
    REQUIRE_THROWS_AS(deploy_robots(map, map.free_count() + 1, RobotKind::Quadcopter, 1),
                      std::invalid_argument);
}

TEST_CASE("ground orientations do not depend on the fleet size") {
    GroundTruthMap map = random_map(20, 20, 20, 11);
    auto big = deploy_robots(map, 10, RobotKind::Turtlebot, 9);
    auto small = deploy_robots(map, 3, RobotKind::Turtlebot, 9);
    for (int i = 0; i < 3; ++i) REQUIRE(small[i].state.heading == big[i].state.heading);
    // quadcopters always face east
    for (const RobotAgent& r : deploy_robots(map, 10, RobotKind::Quadcopter, 9))
        REQUIRE(r.state.heading == Orientation::E);
}

TEST_CASE("missions cover every free cell, collision-free, in both modes and kinds") {
    for (RobotKind kind : {RobotKind::Turtlebot, RobotKind::Quadcopter}) {
        for (PlannerMode mode : {PlannerMode::OnDemand, PlannerMode::FullReplan}) {
            GroundTruthMap map = random_map(12, 12, 25, 77);
            int robots = 4;
            auto agents = deploy_robots(map, robots, kind, 5);
            CoveragePlanner planner(map.dims, robots, kind, mode, false);
            MissionTrace trace = run_mission(map, agents, planner, 10000);
            REQUIRE(trace.complete);
            REQUIRE(planner.global_view().count_of(CellClass::Covered) == map.free_count());
            REQUIRE(verify_trajectories(trace.full_paths, map).empty());
            // all full paths share the mission length
            int total = 0;
            for (const HorizonTraceRecord& rec : trace.records) total += rec.lambda;
            for (auto& [id, p] : trace.full_paths) REQUIRE(p.length() == total);
        }
    }
}

TEST_CASE("verify_trajectories flags crafted faults of each kind") {
    GroundTruthMap map = random_map(6, 6, 0, 1);  // open room
    map.free[cell_index(map.dims, Cell{3, 3})] = false;

    SECTION("a robot driving through a wall") {
        std::map<int, Path> paths{{1, cells_path({{2, 3}, {3, 3}, {4, 3}})}};
        auto report = verify_trajectories(paths, map);
        REQUIRE(report.size() == 1);
        REQUIRE(report[0].kind == ViolationKind::Obstacle);
        REQUIRE(report[0].t == 1);
        REQUIRE(report[0].robot_a == 1);
        REQUIRE(report[0].cell == Cell{3, 3});
    }

    SECTION("two robots meeting in one cell") {
        std::map<int, Path> paths{{1, cells_path({{1, 1}, {2, 1}})},
                                  {2, cells_path({{3, 1}, {2, 1}})}};
        auto report = verify_trajectories(paths, map);
        REQUIRE(report.size() == 1);
        REQUIRE(report[0].kind == ViolationKind::SameCell);
        REQUIRE(report[0].t == 1);
        REQUIRE(report[0].robot_a == 1);
        REQUIRE(report[0].robot_b == 2);
    }

    SECTION("two robots swapping cells head-on") {
        std::map<int, Path> paths{{1, cells_path({{1, 1}, {2, 1}})},
                                  {2, cells_path({{2, 1}, {1, 1}})}};
        auto report = verify_trajectories(paths, map);
        REQUIRE_FALSE(report.empty());
        bool headon = false;
        for (const Violation& v : report) headon = headon || v.kind == ViolationKind::HeadOn;
        REQUIRE(headon);
    }

    SECTION("a shorter path parks while a longer one continues") {
        std::map<int, Path> paths{{1, cells_path({{1, 1}})},
                                  {2, cells_path({{4, 1}, {3, 1}, {2, 1}, {1, 1}})}};
        auto report = verify_trajectories(paths, map);
        REQUIRE(report.size() == 1);  // collision with the parked robot at t=3
        REQUIRE(report[0].kind == ViolationKind::SameCell);
        REQUIRE(report[0].t == 3);
    }

    SECTION("clean trajectories yield an empty report") {
        std::map<int, Path> paths{{1, cells_path({{1, 1}, {2, 1}, {2, 2}})},
                                  {2, cells_path({{4, 4}, {4, 5}})}};
        REQUIRE(verify_trajectories(paths, map).empty());
    }
}

TEST_CASE("repeated missions are state-identical") {
    GroundTruthMap map = random_map(14, 14, 25, 31);
    for (PlannerMode mode : {PlannerMode::OnDemand, PlannerMode::FullReplan}) {
        auto agents1 = deploy_robots(map, 6, RobotKind::Turtlebot, 8);
        auto agents2 = deploy_robots(map, 6, RobotKind::Turtlebot, 8);
        CoveragePlanner p1(map.dims, 6, RobotKind::Turtlebot, mode, false);
        CoveragePlanner p2(map.dims, 6, RobotKind::Turtlebot, mode, false);
        MissionTrace t1 = run_mission(map, agents1, p1, 10000);
        MissionTrace t2 = run_mission(map, agents2, p2, 10000);
        REQUIRE(t1.complete);
        REQUIRE(t1.full_paths == t2.full_paths);
        REQUIRE(t1.records.size() == t2.records.size());
        for (std::size_t i = 0; i < t1.records.size(); ++i) {
            REQUIRE(t1.records[i].lambda == t2.records[i].lambda);
            REQUIRE(t1.records[i].active_ids == t2.records[i].active_ids);
            REQUIRE(t1.records[i].paths == t2.records[i].paths);
        }
    }
}

TEST_CASE("executed segments match the planner ledger") {
    GroundTruthMap map = random_map(10, 10, 20, 3);
    auto agents = deploy_robots(map, 3, RobotKind::Quadcopter, 6);
    std::map<int, std::vector<RobotState>> rebuilt;
    for (const RobotAgent& a : agents) rebuilt[a.id] = {a.state};
    CoveragePlanner planner(map.dims, 3, RobotKind::Quadcopter, PlannerMode::OnDemand, false);
    MissionTrace trace = run_mission(map, agents, planner, 10000);
    // replaying the recorded per-horizon segments (executed moves for the
    // active robots, halts for the inactive ones) reconstructs Π exactly
    for (const HorizonTraceRecord& rec : trace.records) {
        for (auto& [id, acc] : rebuilt) {
            auto it = rec.paths.find(id);
            if (it == rec.paths.end()) {
                acc.insert(acc.end(), rec.lambda, acc.back());
            } else {
                REQUIRE(acc.back() == it->second.front());
                acc.insert(acc.end(), it->second.begin() + 1, it->second.end());
            }
        }
    }
    for (auto& [id, p] : trace.full_paths) REQUIRE(rebuilt.at(id) == p.states);
}
