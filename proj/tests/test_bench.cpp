#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace ondemcpp;
using namespace testutil;

namespace {

std::string write_temp_map(const GroundTruthMap& map, const std::string& name) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    save_map(map, out);
    return path.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("the CSV header is stable") {
    REQUIRE(std::string(kCsvHeader) ==
            "map,kind,mode,R,seed,horizons,lambda_total,avg_participants,"
            "t_c_s,t_p_s,t_halt_s,t_nonhalt_s,t_m_s,complete");
}

TEST_CASE("CSV rows use fixed six-decimal reals and leave the stream clean") {
    MetricsRow row;
    row.map = "m";
    row.kind = "quadcopter";
    row.mode = "ondem";
    row.robots = 3;
    row.seed = 7;
    row.horizons = 2;
    row.lambda_total = 9;
    row.avg_participants = 1.5;
    row.t_c = 0.125;
    row.t_p = 9.0;
    row.t_halt = 0.5;
    row.t_nonhalt = 8.5;
    row.t_m = 9.125;
    row.complete = true;
    std::ostringstream out;
    write_csv_row(out, row, "7");
    REQUIRE(out.str() ==
            "m,quadcopter,ondem,3,7,2,9,1.500000,0.125000,9.000000,0.500000,8.500000,"
            "9.125000,true\n");
    out << 0.5;  // precision must not leak into later output
    REQUIRE(out.str().substr(out.str().size() - 3) == "0.5");
}

TEST_CASE("run_single completes and self-checks on a small map") {
    GroundTruthMap map = random_map(10, 10, 20, 21);
    RunResult r = run_single(map, "small", 3, RobotKind::Quadcopter, PlannerMode::OnDemand, 1,
                             1.0, map.free_count(), false);
    REQUIRE(r.ok());
    REQUIRE(r.row.map == "small");
    REQUIRE(r.row.kind == "quadcopter");
    REQUIRE(r.row.mode == "ondem");
    REQUIRE(r.row.seed == 1);
    REQUIRE(r.row.t_c == 0.0);  // timing disabled
}

TEST_CASE("experiment grids emit the expected rows and are byte-stable") {
    GroundTruthMap map = random_map(12, 12, 20, 33);
    std::string map_path = write_temp_map(map, "bench_test.map");
    auto trace_dir = std::filesystem::temp_directory_path() / "bench_test_traces";
    std::filesystem::remove_all(trace_dir);

    ExperimentConfig config;
    config.map_path = map_path;
    config.robots = {3};
    config.kind = RobotKind::Turtlebot;
    config.modes = {PlannerMode::OnDemand, PlannerMode::FullReplan};
    config.seeds = {1, 2};
    config.measure_time = false;
    config.trace_dir = trace_dir.string();

    std::ostringstream csv1, log1;
    REQUIRE(run_experiments(config, csv1, log1));
    REQUIRE(log1.str().empty());

    // header + per mode: 2 detail rows + mean + stddev
    std::istringstream lines(csv1.str());
    std::vector<std::string> rows;
    for (std::string line; std::getline(lines, line);) rows.push_back(line);
    REQUIRE(rows.size() == 1 + 2 * (2 + 2));
    REQUIRE(rows[0] == kCsvHeader);
    REQUIRE(rows[1].rfind("bench_test,turtlebot,ondem,3,1,", 0) == 0);
    REQUIRE(rows[3].rfind("bench_test,turtlebot,ondem,3,mean,", 0) == 0);
    REQUIRE(rows[4].rfind("bench_test,turtlebot,ondem,3,stddev,", 0) == 0);
    REQUIRE(rows[5].rfind("bench_test,turtlebot,gamrcpp,3,1,", 0) == 0);

    // trace files exist, carry the schema header, and repeat byte-for-byte
    auto trace_file = trace_dir / "bench_test_turtlebot_ondem_R3_s1.jsonl";
    REQUIRE(std::filesystem::exists(trace_file));
    std::string trace1 = slurp(trace_file);
    REQUIRE(trace1.rfind("{\"schema\":\"ondemcpp-trace\",\"version\":1}", 0) == 0);

    std::ostringstream csv2, log2;
    REQUIRE(run_experiments(config, csv2, log2));
    REQUIRE(csv1.str() == csv2.str());
    REQUIRE(slurp(trace_file) == trace1);
    std::filesystem::remove_all(trace_dir);
}

TEST_CASE("cropped runs carry the crop size in the map label") {
    GroundTruthMap map = random_map(16, 16, 0, 44);  // open room: any crop stays connected
    std::string map_path = write_temp_map(map, "bench_crop.map");
    ExperimentConfig config;
    config.map_path = map_path;
    config.crop_w = 8;
    config.crop_h = 8;
    config.robots = {2};
    config.modes = {PlannerMode::OnDemand};
    config.seeds = {1};
    config.measure_time = false;
    std::ostringstream csv, log;
    run_experiments(config, csv, log);
    std::istringstream lines(csv.str());
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    REQUIRE(first.rfind("bench_crop_8x8,", 0) == 0);
}
