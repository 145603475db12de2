#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ondemcpp;
using namespace testutil;

namespace {

MissionTrace crafted_trace() {
    // two robots, two horizons of λ = 3 and λ = 2; robot 1 halts three of
    // its five steps, robot 2 halts one
    MissionTrace trace;
    trace.kind = RobotKind::Quadcopter;
    trace.robot_count = 2;
    trace.complete = true;
    trace.completion_plan_seconds = 0.5;

    HorizonTraceRecord h1{1, 3, {1, 2}, 2.0, 2, true, {}};
    HorizonTraceRecord h2{2, 2, {1, 2}, 1.0, 1, true, {}};
    trace.records = {h1, h2};

    auto path_of = [](std::initializer_list<Cell> cells) {
        std::vector<RobotState> states;
        for (Cell c : cells) states.push_back(RobotState{c});
        return Path(std::move(states));
    };
    // robot 1: halt, halt, move, move, halt
    trace.full_paths[1] = path_of({{1, 1}, {1, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 1}});
    // robot 2: move, move, move, halt, move
    trace.full_paths[2] = path_of({{5, 5}, {5, 4}, {5, 3}, {5, 2}, {5, 2}, {5, 1}});
    return trace;
}

}  // namespace

TEST_CASE("metrics of a crafted trace match hand-computed values") {
    double tau = 2.0;
    MetricsRow row = compute_metrics(crafted_trace(), tau);
    REQUIRE(row.robots == 2);
    REQUIRE(row.complete);
    REQUIRE(row.horizons == 2);
    REQUIRE(row.lambda_total == 5);
    REQUIRE(row.avg_participants == 1.5);
    REQUIRE(row.t_c == 3.5);                       // 2.0 + 1.0 + completion 0.5
    REQUIRE(row.t_p == 10.0);                      // 5 steps of τ = 2
    REQUIRE(row.t_halt == 4.0);                    // (3 + 1) halts / 2 robots * τ
    REQUIRE(row.t_nonhalt == 6.0);
    REQUIRE(row.t_m == 13.5);
}

TEST_CASE("turtlebot rotations count as non-halt steps") {
    MissionTrace trace;
    trace.kind = RobotKind::Turtlebot;
    trace.robot_count = 1;
    trace.complete = true;
    trace.records = {HorizonTraceRecord{1, 2, {1}, 0.0, 1, true, {}}};
    // rotate then move: neither step is a halt
    trace.full_paths[1] = Path({RobotState{Cell{1, 1}, Orientation::N},
                                RobotState{Cell{1, 1}, Orientation::E},
                                RobotState{Cell{2, 1}, Orientation::E}});
    MetricsRow row = compute_metrics(trace, 1.0);
    REQUIRE(row.t_halt == 0.0);
    REQUIRE(row.t_nonhalt == 2.0);
}

TEST_CASE("metric identities hold on real missions") {
    for (PlannerMode mode : {PlannerMode::OnDemand, PlannerMode::FullReplan}) {
        GroundTruthMap map = random_map(12, 12, 20, 13);
        auto agents = deploy_robots(map, 4, RobotKind::Turtlebot, 2);
        CoveragePlanner planner(map.dims, 4, RobotKind::Turtlebot, mode, true);
        MissionTrace trace = run_mission(map, agents, planner, 10000);
        double tau = 0.5;
        MetricsRow row = compute_metrics(trace, tau);
        REQUIRE(row.complete);
        REQUIRE(row.t_m == Catch::Approx(row.t_c + row.t_p));
        REQUIRE(row.t_p == Catch::Approx(row.lambda_total * tau));
        REQUIRE(row.t_halt + row.t_nonhalt == Catch::Approx(row.t_p));
        REQUIRE(row.t_c > 0.0);  // measured wall time
        REQUIRE(row.avg_participants > 0.0);
        REQUIRE(row.avg_participants <= row.robots);
    }
}

TEST_CASE("an empty trace yields all-zero metrics") {
    MissionTrace trace;
    trace.robot_count = 0;
    MetricsRow row = compute_metrics(trace, 1.0);
    REQUIRE(row.horizons == 0);
    REQUIRE(row.lambda_total == 0);
    REQUIRE(row.avg_participants == 0.0);
    REQUIRE(row.t_p == 0.0);
    REQUIRE(row.t_halt == 0.0);
    REQUIRE(row.t_m == 0.0);
}
