#pragma once

#include <cmath>
#include <filesystem>
#include <iomanip>

#include <json.hpp>

#include "ondemcpp/metrics.hpp"

namespace ondemcpp {

struct ExperimentConfig {
    std::string map_path;
    std::string map_label;  // defaults to the map file stem
    int crop_w = 0, crop_h = 0;  // 0 = no crop
    std::vector<int> robots;
    RobotKind kind = RobotKind::Quadcopter;
    std::vector<PlannerMode> modes;
    std::vector<std::uint32_t> seeds;
    double tau = 1.0;
    int max_horizons = 0;  // 0 = |free| (the termination bound)
    std::string out_csv;        // empty = stdout
    std::string trace_dir;      // empty = no trace files
    bool measure_time = true;   // false pins all timing fields to 0 for byte-stable output
};

inline constexpr const char* kCsvHeader =
    "map,kind,mode,R,seed,horizons,lambda_total,avg_participants,t_c_s,t_p_s,t_halt_s,"
    "t_nonhalt_s,t_m_s,complete";

struct RunResult {
    MetricsRow row;
    MissionTrace trace;
    CollisionReport collisions;
    bool covered_equals_free = false;

    bool ok() const { return row.complete && collisions.empty() && covered_equals_free; }
};

inline RunResult run_single(const GroundTruthMap& map, const std::string& label, int robots,
                            RobotKind kind, PlannerMode mode, std::uint32_t seed, double tau,
                            int max_horizons, bool measure_time) {
    std::vector<RobotAgent> agents = deploy_robots(map, robots, kind, seed);
    CoveragePlanner planner(map.dims, robots, kind, mode, measure_time);
    RunResult r;
    r.trace = run_mission(map, agents, planner, max_horizons);
    r.collisions = verify_trajectories(r.trace.full_paths, map);
    r.covered_equals_free = true;
    for (int i = 0; i < map.dims.cell_count(); ++i) {
        Cell c = cell_at(map.dims, i);
        if (map.free[i] != (planner.global_view().at(c) == CellClass::Covered)) {
            r.covered_equals_free = false;
            break;
        }
    }
    r.row = compute_metrics(r.trace, tau);
    r.row.map = label;
    r.row.kind = kind == RobotKind::Turtlebot ? "turtlebot" : "quadcopter";
    r.row.mode = to_string(mode);
    r.row.seed = seed;
    return r;
}

inline void write_csv_row(std::ostream& out, const MetricsRow& row, const std::string& seed_label) {
    out << row.map << ',' << row.kind << ',' << row.mode << ',' << row.robots << ','
        << seed_label << ',' << row.horizons << ',' << row.lambda_total << ','
        << std::fixed << std::setprecision(6) << row.avg_participants << ',' << row.t_c << ','
        << row.t_p << ',' << row.t_halt << ',' << row.t_nonhalt << ',' << row.t_m << ','
        << (row.complete ? "true" : "false") << '\n';
    out.unsetf(std::ios::fixed);
}

/// Line-delimited trace: a schema header, then one object per executed
/// horizon. Orientation is emitted only for ground robots.
inline void write_trace(std::ostream& out, const MissionTrace& trace) {
    using json = nlohmann::ordered_json;
    out << json{{"schema", "ondemcpp-trace"}, {"version", 1}}.dump() << '\n';
    bool ground = trace.kind == RobotKind::Turtlebot;
    for (const HorizonTraceRecord& rec : trace.records) {
        json paths = json::object();
        for (auto& [id, states] : rec.paths) {
            json seq = json::array();
            for (const RobotState& s : states) {
                json st = json::array({s.cell.x, s.cell.y});
                if (ground) st.push_back(to_string(s.heading));
                seq.push_back(std::move(st));
            }
            paths[std::to_string(id)] = std::move(seq);
        }
        json line{{"h", rec.h},
                  {"lambda", rec.lambda},
                  {"active_ids", rec.active_ids},
                  {"plan_ms", rec.plan_seconds * 1000.0},
                  {"paths", std::move(paths)}};
        out << line.dump() << '\n';
    }
}

/// Runs the whole config grid (R × mode × seed, in config order), appending
/// a detail row per run plus mean/stddev summary rows per (R, mode).
/// Returns true iff every run completed coverage without collisions.
inline bool run_experiments(const ExperimentConfig& config, std::ostream& csv,
                            std::ostream& log) {
    GroundTruthMap map = load_map_file(config.map_path);
    if (config.crop_w > 0) map = crop_map(map, config.crop_w, config.crop_h);
    std::string label = config.map_label;
    if (label.empty()) label = std::filesystem::path(config.map_path).stem().string();
    if (config.crop_w > 0)
        label += "_" + std::to_string(config.crop_w) + "x" + std::to_string(config.crop_h);
    if (!check_connectivity(map))
        log << "warning: free space of " << label << " is not 4-connected\n";
    int max_h = config.max_horizons > 0 ? config.max_horizons : map.free_count();

    csv << kCsvHeader << '\n';
    bool all_ok = true;
    for (int robots : config.robots) {
        for (PlannerMode mode : config.modes) {
            std::vector<MetricsRow> rows;
            for (std::uint32_t seed : config.seeds) {
                RunResult r = run_single(map, label, robots, config.kind, mode, seed, config.tau,
                                         max_h, config.measure_time);
                write_csv_row(csv, r.row, std::to_string(seed));
                if (!r.ok()) {
                    all_ok = false;
                    log << "FAILED: " << label << " " << r.row.kind << " " << r.row.mode << " R="
                        << robots << " seed=" << seed << " complete=" << r.row.complete
                        << " collisions=" << r.collisions.size()
                        << " covered_equals_free=" << r.covered_equals_free << '\n';
                }
                if (!config.trace_dir.empty()) {
                    std::filesystem::create_directories(config.trace_dir);
                    std::string name = label + "_" + r.row.kind + "_" + r.row.mode + "_R" +
                                       std::to_string(robots) + "_s" + std::to_string(seed) +
                                       ".jsonl";
                    std::ofstream tf(std::filesystem::path(config.trace_dir) / name);
                    write_trace(tf, r.trace);
                }
                rows.push_back(r.row);
            }
            // mean/stddev summary across seeds
            MetricsRow mean, stddev;
            mean = rows.front();
            auto fold = [&](auto get, auto set) {
                double m = 0.0;
                for (const MetricsRow& r : rows) m += get(r);
                m /= rows.size();
                double v = 0.0;
                for (const MetricsRow& r : rows) v += (get(r) - m) * (get(r) - m);
                v = rows.size() > 1 ? std::sqrt(v / (rows.size() - 1)) : 0.0;
                set(mean, m);
                set(stddev, v);
            };
            stddev = mean;
            fold([](const MetricsRow& r) { return double(r.horizons); },
                 [](MetricsRow& r, double v) { r.horizons = static_cast<int>(std::lround(v)); });
            fold([](const MetricsRow& r) { return double(r.lambda_total); },
                 [](MetricsRow& r, double v) { r.lambda_total = std::llround(v); });
            fold([](const MetricsRow& r) { return r.avg_participants; },
                 [](MetricsRow& r, double v) { r.avg_participants = v; });
            fold([](const MetricsRow& r) { return r.t_c; },
                 [](MetricsRow& r, double v) { r.t_c = v; });
            fold([](const MetricsRow& r) { return r.t_p; },
                 [](MetricsRow& r, double v) { r.t_p = v; });
            fold([](const MetricsRow& r) { return r.t_halt; },
                 [](MetricsRow& r, double v) { r.t_halt = v; });
            fold([](const MetricsRow& r) { return r.t_nonhalt; },
                 [](MetricsRow& r, double v) { r.t_nonhalt = v; });
            fold([](const MetricsRow& r) { return r.t_m; },
                 [](MetricsRow& r, double v) { r.t_m = v; });
            bool all_complete = true;
            for (const MetricsRow& r : rows) all_complete = all_complete && r.complete;
            mean.complete = stddev.complete = all_complete;
            write_csv_row(csv, mean, "mean");
            write_csv_row(csv, stddev, "stddev");
        }
    }
    return all_ok;
}

}  // namespace ondemcpp
