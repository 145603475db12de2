#pragma once

#include <chrono>
#include <map>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "ondemcpp/prioritized.hpp"

namespace ondemcpp {

enum class PlannerMode : std::uint8_t { OnDemand, FullReplan };

inline const char* to_string(PlannerMode m) {
    return m == PlannerMode::OnDemand ? "ondem" : "gamrcpp";
}

/// M_req: a robot reports its identity, current state, and local view.
struct RequestMessage {
    int id;
    RobotState state;
    WorkspaceView local;
};

/// M_res: the path the robot must follow this horizon. An empty path with
/// coverage_complete set tells the robot to stop.
struct ResponseMessage {
    Path path;
    bool coverage_complete = false;
};

struct HorizonResult {
    int index = 0;
    int lambda = 0;
    std::map<int, Path> sigma;  // active robot id -> its λ-length path
    double planning_seconds = 0.0;
    int participants_count = 0;
    bool coverage_complete = false;
    /// Some robot fully consumed its combined path this horizon and ended
    /// on a (possibly reserved) goal cell.
    bool progress = false;
};

/// The centralized coverage planner. Robots whose previous paths are fully
/// executed send requests; when every robot expected this horizon has
/// reported, a new joint plan is computed. OnDemand mode replans only the
/// robots without stored remaining paths; FullReplan discards remainders
/// and replans everyone every horizon.
class CoveragePlanner {
public:
    CoveragePlanner(GridDims dims, int robot_count, RobotKind kind, PlannerMode mode,
                    bool measure_time = true)
        : global_(dims),
          kind_(kind),
          mode_(mode),
          measure_time_(measure_time),
          robot_count_(robot_count),
          sigma_rem_(robot_count + 1),
          pi_(robot_count + 1),
          expected_requesters_(robot_count) {
        for (int id = 1; id <= robot_count; ++id) pi_[id] = Path();
    }

    const WorkspaceView& global_view() const { return global_; }
    const std::unordered_set<Cell>& reserved_goals() const { return reserved_; }
    const std::vector<HorizonResult>& horizons() const { return horizons_; }
    bool coverage_complete() const { return complete_; }

    /// Accumulated full path of one robot across all completed horizons;
    /// empty until that robot has appeared in a horizon.
    const Path& accumulated_path(int id) const { return pi_[id]; }

    const std::optional<Path>& remaining_path(int id) const { return sigma_rem_[id]; }

    /// Ingests one request. Returns the per-robot responses once the last
    /// expected request of the horizon arrives, nullopt otherwise.
    std::optional<std::map<int, ResponseMessage>> handle_request(const RequestMessage& req) {
        if (req.id < 1 || req.id > robot_count_)
            throw std::invalid_argument("handle_request: unknown robot id " +
                                        std::to_string(req.id));
        if (requested_.count(req.id))
            throw std::logic_error("handle_request: duplicate request from robot " +
                                   std::to_string(req.id) + " within one horizon");
        requested_.insert(req.id);
        if (!sigma_rem_[req.id]) participants_.emplace_back(req.id, req.state);
        fuse_local_into_global(global_, req.local);
        ++n_req_;
        if (n_req_ < expected_requesters_) return std::nullopt;

        // Formerly inactive robots rejoin the participants without having
        // sent a fresh request.
        for (auto& [id, state] : inactive_prev_) participants_.emplace_back(id, state);
        inactive_prev_.clear();
        HorizonResult hr = plan_horizon();
        std::map<int, ResponseMessage> responses;
        for (auto& [id, path] : hr.sigma) responses[id] = ResponseMessage{path, false};
        if (hr.coverage_complete)
            for (int id = 1; id <= robot_count_; ++id)
                responses[id] = ResponseMessage{Path(), true};
        requested_.clear();
        participants_.clear();
        n_req_ = 0;
        return responses;
    }

private:
    using Clock = std::chrono::steady_clock;

    HorizonResult plan_horizon() {
        auto t0 = Clock::now();
        HorizonResult hr;
        hr.index = static_cast<int>(horizons_.size()) + 1;
        hr.participants_count = static_cast<int>(participants_.size());

        if (mode_ == PlannerMode::FullReplan) {
            // Everyone is a participant each horizon; drop stored state.
            for (auto& rem : sigma_rem_) rem.reset();
            reserved_.clear();
        }

        std::vector<Participant> parts;
        for (auto& [id, state] : participants_) parts.push_back({id, state});
        std::sort(parts.begin(), parts.end(),
                  [](const Participant& a, const Participant& b) { return a.id < b.id; });

        std::vector<int> rem_ids;
        std::vector<Path> rem_paths;
        for (int id = 1; id <= robot_count_; ++id)
            if (sigma_rem_[id]) {
                rem_ids.push_back(id);
                rem_paths.push_back(*sigma_rem_[id]);
            }

        std::vector<Cell> goals = unassigned_goals(global_, reserved_);
        std::vector<Path> sigma_par;
        if (!goals.empty()) {
            AssignmentBundle cop = cop_for_par(global_, reserved_, parts, kind_);
            PriorityBundle cfp = cfp_for_par(cop.gamma, cop.phi, parts, rem_paths, kind_);
            sigma_par = std::move(cfp.sigma);
        } else if (!rem_ids.empty()) {
            // Nothing left to assign: participants idle while the
            // non-participants finish their remainders.
            for (const Participant& p : parts) sigma_par.emplace_back(p.start);
        } else {
            hr.coverage_complete = true;
            complete_ = true;
            hr.planning_seconds = elapsed(t0);
            horizons_.push_back(hr);
            return hr;
        }

        // Combine participant plans with non-participant remainders.
        std::map<int, Path> sigma_all;
        std::map<int, RobotState> current_state;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            sigma_all[parts[i].id] = sigma_par[i];
            current_state[parts[i].id] = parts[i].start;
        }
        for (std::size_t i = 0; i < rem_ids.size(); ++i) {
            sigma_all[rem_ids[i]] = rem_paths[i];
            current_state[rem_ids[i]] = rem_paths[i].front();
        }

        int lambda = 0;
        for (auto& [id, p] : sigma_all)
            if (p.length() > 0 && (lambda == 0 || p.length() < lambda)) lambda = p.length();
        if (lambda == 0) {
            std::ostringstream dump;
            dump << "plan_horizon: deadlock — " << goals.size()
                 << " unassigned goals but zero active robots; participants:";
            for (const Participant& p : parts) dump << " " << p.id << "@" << to_string(p.start.cell);
            throw std::runtime_error(dump.str());
        }
        hr.lambda = lambda;

        // Split at λ, reserve remainder goals, extend the ledger Π.
        expected_requesters_ = 0;
        reserved_.clear();
        for (auto& [id, p] : sigma_all) {
            if (p.length() == 0) {
                inactive_prev_.emplace_back(id, current_state[id]);
                sigma_rem_[id].reset();
                append_to_ledger(id, dummy_path(current_state[id], lambda));
                continue;
            }
            auto [prefix, rest] = split_path(p, lambda);
            if (rest && mode_ == PlannerMode::OnDemand) {
                sigma_rem_[id] = *rest;
                reserved_.insert(rest->back().cell);
            } else {
                sigma_rem_[id].reset();
            }
            hr.sigma[id] = prefix;
            ++expected_requesters_;
            append_to_ledger(id, prefix);
        }

        // Progress: some robot finishes its whole combined path this
        // horizon (the λ-minimal one always does) on a goal it owned.
        std::unordered_set<Cell> goal_cells(goals.begin(), goals.end());
        for (auto& [id, p] : sigma_all) {
            if (p.length() != lambda) continue;
            Cell end = p.back().cell;
            if (goal_cells.count(end) || pre_split_reserved_.count(end) ||
                global_.at(end) == CellClass::Goal) {
                hr.progress = true;
                break;
            }
        }
        pre_split_reserved_ = reserved_;

        hr.planning_seconds = elapsed(t0);
        horizons_.push_back(hr);
        return hr;
    }

    void append_to_ledger(int id, const Path& segment) {
        Path& pi = pi_[id];
        if (pi.states.empty()) {
            pi = segment;
        } else {
            if (!(pi.back() == segment.front()))
                throw std::logic_error("ledger discontinuity for robot " + std::to_string(id));
            pi.states.insert(pi.states.end(), segment.states.begin() + 1, segment.states.end());
        }
    }

    double elapsed(Clock::time_point t0) const {
        if (!measure_time_) return 0.0;
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    WorkspaceView global_;
    RobotKind kind_;
    PlannerMode mode_;
    bool measure_time_;
    int robot_count_;

    std::vector<std::optional<Path>> sigma_rem_;      // indexed by robot id
    std::unordered_set<Cell> reserved_;               // W̃_g
    std::unordered_set<Cell> pre_split_reserved_;     // previous horizon's W̃_g
    std::vector<std::pair<int, RobotState>> participants_;
    std::vector<std::pair<int, RobotState>> inactive_prev_;
    std::unordered_set<int> requested_;
    int n_req_ = 0;
    int expected_requesters_;
    std::vector<Path> pi_;  // accumulated full paths, indexed by robot id
    std::vector<HorizonResult> horizons_;
    bool complete_ = false;
};

}  // namespace ondemcpp
