#pragma once

#include "ondemcpp/simulator.hpp"

namespace ondemcpp {

/// One CSV detail row. Identities that hold by construction:
/// t_m = t_c + t_p; t_p = lambda_total * tau; t_halt + t_nonhalt = t_p.
struct MetricsRow {
    std::string map, kind, mode;
    int robots = 0;
    std::uint32_t seed = 0;
    int horizons = 0;        // executed horizons (λ ≥ 1)
    long long lambda_total = 0;
    double avg_participants = 0.0;  // R*, mean over executed horizons
    double t_c = 0.0;
    double t_p = 0.0;
    double t_halt = 0.0;
    double t_nonhalt = 0.0;
    double t_m = 0.0;
    bool complete = false;
};

/// Halt moves are transitions leaving both the cell and the heading
/// unchanged; every such step (including rotations' absence) costs a full
/// τ of mission time. T_Halt/T_non-Halt are per-robot means so that their
/// sum equals the global T_p.
inline MetricsRow compute_metrics(const MissionTrace& trace, double tau) {
    MetricsRow row;
    row.robots = trace.robot_count;
    row.complete = trace.complete;
    row.horizons = static_cast<int>(trace.records.size());
    double participants_sum = 0.0;
    for (const HorizonTraceRecord& rec : trace.records) {
        row.lambda_total += rec.lambda;
        row.t_c += rec.plan_seconds;
        participants_sum += rec.participants;
    }
    row.t_c += trace.completion_plan_seconds;
    row.avg_participants = row.horizons ? participants_sum / row.horizons : 0.0;
    row.t_p = static_cast<double>(row.lambda_total) * tau;

    double halt_steps_sum = 0.0;
    for (auto& [id, p] : trace.full_paths) {
        int halts = 0;
        for (std::size_t j = 1; j < p.states.size(); ++j)
            if (p.states[j] == p.states[j - 1]) ++halts;
        halt_steps_sum += halts;
    }
    if (trace.robot_count > 0) row.t_halt = tau * halt_steps_sum / trace.robot_count;
    row.t_nonhalt = row.t_p - row.t_halt;
    row.t_m = row.t_c + row.t_p;
    return row;
}

}  // namespace ondemcpp
