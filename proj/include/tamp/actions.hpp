#pragma once

// High-level action vocabulary (navigate/pickup/place), task plans, and the
// robot's symbolic state. Low-level controls are kept for logging fidelity:
// paths expand into per-cell batches of 5cm forward steps plus 45-degree turns.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tamp/occupancy_grid.hpp"

namespace tamp {

enum class ActionKind { Navigate, Pickup, Place };

inline std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Navigate: return "navigate";
        case ActionKind::Pickup: return "pickup";
        case ActionKind::Place: return "place";
    }
    return "?";
}

struct HighLevelAction {
    ActionKind kind = ActionKind::Navigate;
    // navigate: target = furniture, room = its room
    // pickup/place: target = object, furniture = supporting furniture
    std::string target;
    std::string second;  // room for navigate, furniture for pickup/place

    bool operator==(const HighLevelAction&) const = default;

    static HighLevelAction navigate(std::string furniture, std::string room) {
        return {ActionKind::Navigate, std::move(furniture), std::move(room)};
    }
    static HighLevelAction pickup(std::string object, std::string furniture) {
        return {ActionKind::Pickup, std::move(object), std::move(furniture)};
    }
    static HighLevelAction place(std::string object, std::string furniture) {
        return {ActionKind::Place, std::move(object), std::move(furniture)};
    }

    std::string str() const {
        return to_string(kind) + "(" + target + ", " + second + ")";
    }
};

struct TaskPlan {
    std::vector<HighLevelAction> actions;

    bool operator==(const TaskPlan&) const = default;
};

struct HighLevelState {
    std::optional<std::string> holding;
    std::optional<std::string> at_furniture;
    std::optional<std::string> at_room;

    bool hand_free() const { return !holding.has_value(); }

    bool operator==(const HighLevelState&) const = default;
};

enum class ControlKind { Forward, TurnLeft45, TurnRight45, PickAt, PlaceAt };

struct LowLevelControl {
    ControlKind kind = ControlKind::Forward;
    Cell cell;  // PickAt/PlaceAt only
};

inline json action_to_json(const HighLevelAction& a) {
    return json::array({to_string(a.kind), a.target, a.second});
}

inline HighLevelAction action_from_json(const json& j) {
    const std::string kind = j.at(0).get<std::string>();
    HighLevelAction a;
    if (kind == "navigate")
        a.kind = ActionKind::Navigate;
    else if (kind == "pickup")
        a.kind = ActionKind::Pickup;
    else if (kind == "place")
        a.kind = ActionKind::Place;
    else
        throw ParseError("unknown action kind: " + kind);
    a.target = j.at(1).get<std::string>();
    a.second = j.at(2).get<std::string>();
    return a;
}

inline json plan_to_json(const TaskPlan& plan) {
    json actions = json::array();
    for (const auto& a : plan.actions) actions.push_back(action_to_json(a));
    return json{{"actions", actions}};
}

inline TaskPlan plan_from_json(const json& j) {
    TaskPlan plan;
    for (const auto& a : j.at("actions")) plan.actions.push_back(action_from_json(a));
    return plan;
}

}  // namespace tamp
