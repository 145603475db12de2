#pragma once

#include <optional>
#include <vector>

#include "ondemcpp/grid.hpp"

namespace ondemcpp {

/// Clockwise cycle: N -> E -> S -> W -> N.
enum class Orientation : std::uint8_t { E, N, W, S };

enum class RobotKind : std::uint8_t { Turtlebot, Quadcopter };

/// Motion primitives. Ground robots use {Halt, TurnRight, TurnLeft,
/// MoveForward}; aerial robots use {Halt, MoveEast, MoveNorth, MoveWest,
/// MoveSouth}. All non-Halt primitives cost 1 move, Halt costs 0; every
/// primitive takes the same tau seconds.
enum class Motion : std::uint8_t {
    Halt,
    TurnRight,
    TurnLeft,
    MoveForward,
    MoveEast,
    MoveNorth,
    MoveWest,
    MoveSouth,
};

inline const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::E: return "E";
        case Orientation::N: return "N";
        case Orientation::W: return "W";
        case Orientation::S: return "S";
    }
    return "?";
}

inline const char* to_string(Motion m) {
    switch (m) {
        case Motion::Halt: return "H";
        case Motion::TurnRight: return "TR";
        case Motion::TurnLeft: return "TL";
        case Motion::MoveForward: return "MN";
        case Motion::MoveEast: return "ME";
        case Motion::MoveNorth: return "MN";
        case Motion::MoveWest: return "MW";
        case Motion::MoveSouth: return "MS";
    }
    return "?";
}

inline int motion_cost(Motion m) { return m == Motion::Halt ? 0 : 1; }

/// Location plus orientation. Aerial states carry no meaningful heading;
/// it is normalized to E everywhere so value equality stays well defined.
struct RobotState {
    Cell cell;
    Orientation heading = Orientation::E;

    bool operator==(const RobotState&) const = default;
};

inline Orientation turn_right(Orientation o) {
    switch (o) {
        case Orientation::N: return Orientation::E;
        case Orientation::E: return Orientation::S;
        case Orientation::S: return Orientation::W;
        case Orientation::W: return Orientation::N;
    }
    return o;
}

inline Orientation turn_left(Orientation o) {
    switch (o) {
        case Orientation::N: return Orientation::W;
        case Orientation::W: return Orientation::S;
        case Orientation::S: return Orientation::E;
        case Orientation::E: return Orientation::N;
    }
    return o;
}

inline Cell step_towards(Cell c, Orientation o) {
    switch (o) {
        case Orientation::E: return Cell{c.x + 1, c.y};
        case Orientation::N: return Cell{c.x, c.y + 1};
        case Orientation::W: return Cell{c.x - 1, c.y};
        case Orientation::S: return Cell{c.x, c.y - 1};
    }
    return c;
}

inline bool motion_valid_for(Motion m, RobotKind kind) {
    if (m == Motion::Halt) return true;
    if (kind == RobotKind::Turtlebot)
        return m == Motion::TurnRight || m == Motion::TurnLeft || m == Motion::MoveForward;
    return m == Motion::MoveEast || m == Motion::MoveNorth || m == Motion::MoveWest ||
           m == Motion::MoveSouth;
}

/// Pure transition function; no bounds or obstacle checks (search layers
/// enforce legality).
inline RobotState apply_motion(RobotState s, Motion m, RobotKind kind) {
    if (!motion_valid_for(m, kind))
        throw std::invalid_argument(std::string("motion ") + to_string(m) +
                                    " not valid for this robot kind");
    switch (m) {
        case Motion::Halt: return s;
        case Motion::TurnRight: return RobotState{s.cell, turn_right(s.heading)};
        case Motion::TurnLeft: return RobotState{s.cell, turn_left(s.heading)};
        case Motion::MoveForward: return RobotState{step_towards(s.cell, s.heading), s.heading};
        case Motion::MoveEast: return RobotState{step_towards(s.cell, Orientation::E), s.heading};
        case Motion::MoveNorth: return RobotState{step_towards(s.cell, Orientation::N), s.heading};
        case Motion::MoveWest: return RobotState{step_towards(s.cell, Orientation::W), s.heading};
        case Motion::MoveSouth: return RobotState{step_towards(s.cell, Orientation::S), s.heading};
    }
    return s;
}

/// Finite state sequence. The first entry is the start state; the path
/// length is the number of transitions (= states.size() - 1).
struct Path {
    std::vector<RobotState> states;

    Path() = default;
    explicit Path(RobotState start) : states{start} {}
    explicit Path(std::vector<RobotState> s) : states(std::move(s)) {}

    int length() const { return static_cast<int>(states.size()) - 1; }
    const RobotState& front() const { return states.front(); }
    const RobotState& back() const { return states.back(); }
    bool operator==(const Path&) const = default;
};

/// Successor expansion order is fixed (TR, TL, MN for ground; ME, MN, MW,
/// MS for aerial) so searches are deterministic. Halt is excluded.
inline std::vector<std::pair<Motion, RobotState>> successors(
    RobotState s, RobotKind kind, const std::function<bool(Cell)>& traversable) {
    std::vector<std::pair<Motion, RobotState>> out;
    auto try_add = [&](Motion m) {
        RobotState next = apply_motion(s, m, kind);
        if (next.cell == s.cell || traversable(next.cell)) out.emplace_back(m, next);
    };
    if (kind == RobotKind::Turtlebot) {
        try_add(Motion::TurnRight);
        try_add(Motion::TurnLeft);
        try_add(Motion::MoveForward);
    } else {
        try_add(Motion::MoveEast);
        try_add(Motion::MoveNorth);
        try_add(Motion::MoveWest);
        try_add(Motion::MoveSouth);
    }
    return out;
}

/// Splits p into a k-length prefix and the remainder. The remainder is
/// nullopt when |p| == k; otherwise prefix.back() == remainder.front().
inline std::pair<Path, std::optional<Path>> split_path(const Path& p, int k) {
    if (k <= 0 || k > p.length())
        throw std::out_of_range("split_path: k=" + std::to_string(k) + " outside (0, " +
                                std::to_string(p.length()) + "]");
    Path prefix(std::vector<RobotState>(p.states.begin(), p.states.begin() + k + 1));
    if (k == p.length()) return {std::move(prefix), std::nullopt};
    Path rest(std::vector<RobotState>(p.states.begin() + k, p.states.end()));
    return {std::move(prefix), std::move(rest)};
}

/// Appends Halt transitions (final-state repetitions) until |p| == target.
inline Path pad_with_halt(Path p, int target) {
    if (target < p.length())
        throw std::invalid_argument("pad_with_halt: target shorter than path");
    p.states.resize(target + 1, p.states.back());
    return p;
}

/// A k-length path of Halt transitions at `state`.
inline Path dummy_path(RobotState state, int k) {
    if (k < 0) throw std::invalid_argument("dummy_path: negative length");
    Path p;
    p.states.assign(k + 1, state);
    return p;
}

/// Infers the unique primitive taking `a` to `b`, or nullopt if none exists.
inline std::optional<Motion> infer_motion(RobotState a, RobotState b, RobotKind kind) {
    static constexpr Motion ground[] = {Motion::Halt, Motion::TurnRight, Motion::TurnLeft,
                                        Motion::MoveForward};
    static constexpr Motion aerial[] = {Motion::Halt, Motion::MoveEast, Motion::MoveNorth,
                                        Motion::MoveWest, Motion::MoveSouth};
    if (kind == RobotKind::Turtlebot) {
        for (Motion m : ground)
            if (apply_motion(a, m, kind) == b) return m;
    } else {
        for (Motion m : aerial)
            if (apply_motion(a, m, kind) == b) return m;
    }
    return std::nullopt;
}

/// Number of non-Halt transitions.
inline int path_cost(const Path& p) {
    int cost = 0;
    for (std::size_t j = 1; j < p.states.size(); ++j)
        if (p.states[j] != p.states[j - 1]) ++cost;
    return cost;
}

/// Every adjacent state pair must be reachable by exactly one primitive of
/// the kind. Used by tests and the trajectory verifier.
inline bool valid_path(const Path& p, RobotKind kind) {
    if (p.states.empty()) return false;
    for (std::size_t j = 1; j < p.states.size(); ++j)
        if (!infer_motion(p.states[j - 1], p.states[j], kind)) return false;
    return true;
}

}  // namespace ondemcpp
