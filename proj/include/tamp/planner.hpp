#pragma once

// High-level candidate-plan generation (scripted enumeration or LLM backend)
// and the symbolic feasibility checker with a regenerate-on-violation loop.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "tamp/actions.hpp"
#include "tamp/ledger.hpp"
#include "tamp/scene_graph.hpp"

namespace tamp {

struct GoalPair {
    std::string category_or_object;
    std::string destination;
};

struct Command {
    std::string text;
    std::vector<GoalPair> goal;
};

struct Mission {
    std::vector<Command> commands;
};

inline Mission load_mission(const json& j) {
    Mission m;
    for (const auto& c : j.at("commands")) {
        Command cmd;
        cmd.text = c.value("text", "");
        for (const auto& g : c.at("goal"))
            cmd.goal.push_back({g.at("category_or_object").get<std::string>(),
                                g.at("destination").get<std::string>()});
        if (cmd.goal.empty()) throw ParseError("command with empty goal");
        m.commands.push_back(std::move(cmd));
    }
    return m;
}

inline Mission load_mission(const std::string& document) {
    try {
        return load_mission(json::parse(document));
    } catch (const json::exception& e) {
        throw ParseError(std::string("mission parse error: ") + e.what());
    }
}

enum class ViolationRule {
    Precondition,
    ObjectMissing,
    FurnitureMissing,
    RoomMissing,
    PickupWrongFurniture,
    PlaceWrongFurniture,
    ObjectNotHeld,
};

inline std::string to_string(ViolationRule rule) {
    switch (rule) {
        case ViolationRule::Precondition: return "precondition";
        case ViolationRule::ObjectMissing: return "object-missing";
        case ViolationRule::FurnitureMissing: return "furniture-missing";
        case ViolationRule::RoomMissing: return "room-missing";
        case ViolationRule::PickupWrongFurniture: return "pickup-wrong-furniture";
        case ViolationRule::PlaceWrongFurniture: return "place-wrong-furniture";
        case ViolationRule::ObjectNotHeld: return "object-not-held";
    }
    return "?";
}

struct Violation {
    int action_index = 0;
    ViolationRule rule = ViolationRule::Precondition;
    std::string detail;
};

// Symbolic simulation under preconditions/effects. Collects every violation;
// effects apply optimistically so later actions are still checked against the
// intended trajectory. Pure: graph and state are never mutated.
inline std::vector<Violation> check_feasibility(const TaskPlan& plan,
                                                const HighLevelState& state,
                                                const SceneGraph& graph) {
    std::vector<Violation> out;
    HighLevelState sim = state;
    std::map<std::string, std::string> location;  // object -> furniture ("" = held)
    for (const auto& obj : graph.objects) location[obj.name] = obj.on_furniture;
    if (sim.holding) location[*sim.holding] = "";

    for (int i = 0; i < static_cast<int>(plan.actions.size()); ++i) {
        const HighLevelAction& a = plan.actions[i];
        auto flag = [&](ViolationRule rule, const std::string& detail) {
            out.push_back({i, rule, detail});
        };
        switch (a.kind) {
            case ActionKind::Navigate: {
                const FurnitureNode* fur = graph.find_furniture(a.target);
                bool room_ok = graph.find_room(a.second) != nullptr;
                if (!fur) {
                    flag(ViolationRule::FurnitureMissing, a.target);
                    break;
                }
                if (!room_ok) {
                    flag(ViolationRule::RoomMissing, a.second);
                    break;
                }
                if (fur->room != a.second)
                    flag(ViolationRule::Precondition,
                         a.target + " is in " + fur->room + ", not " + a.second);
                sim.at_furniture = a.target;
                sim.at_room = fur->room;
                break;
            }
            case ActionKind::Pickup: {
                if (!location.count(a.target)) {
                    flag(ViolationRule::ObjectMissing, a.target);
                    break;
                }
                if (!graph.find_furniture(a.second)) {
                    flag(ViolationRule::FurnitureMissing, a.second);
                    break;
                }
                if (!sim.hand_free())
                    flag(ViolationRule::Precondition, "hand not free, holding " + *sim.holding);
                if (sim.at_furniture != a.second)
                    flag(ViolationRule::PickupWrongFurniture,
                         "robot at " + sim.at_furniture.value_or("<nowhere>") + ", pickup from " +
                             a.second);
                else if (location[a.target] != a.second)
                    flag(ViolationRule::Precondition,
                         a.target + " is not on " + a.second);
                sim.holding = a.target;
                location[a.target] = "";
                break;
            }
            case ActionKind::Place: {
                if (!location.count(a.target)) {
                    flag(ViolationRule::ObjectMissing, a.target);
                    break;
                }
                if (!graph.find_furniture(a.second)) {
                    flag(ViolationRule::FurnitureMissing, a.second);
                    break;
                }
                if (sim.holding != a.target)
                    flag(ViolationRule::ObjectNotHeld, a.target);
                else if (sim.at_furniture != a.second)
                    flag(ViolationRule::PlaceWrongFurniture,
                         "robot at " + sim.at_furniture.value_or("<nowhere>") + ", place on " +
                             a.second);
                sim.holding.reset();
                location[a.target] = a.second;
                break;
            }
        }
    }
    return out;
}

struct PlanningContext {
    Command command;
    HighLevelState state;
    const SceneGraph* graph = nullptr;
    std::string action_docs =
        "navigate(furniture, room): move to a furniture in a room.\n"
        "pickup(object, furniture): pick up an object on the furniture you are at.\n"
        "place(object, furniture): place the held object on the furniture you are at.\n";
    std::string ledger_summary;
    std::vector<Violation> feedback;
    int m_candidates = 3;
    int variant_offset = 0;  // shifts scripted binding rotation (replanning)
};

class PlannerBackend {
public:
    virtual ~PlannerBackend() = default;
    virtual std::vector<TaskPlan> generate(const PlanningContext& ctx) = 0;
};

inline std::string base_name(const std::string& name) {
    auto pos = name.rfind('_');
    if (pos == std::string::npos) return name;
    for (size_t i = pos + 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
    return pos > 0 ? name.substr(0, pos) : name;
}

// Deterministic enumeration backend: binds each goal token to matching object
// instances and emits navigate/pickup/navigate/place chains, rotating the
// bindings to produce M distinct candidates.
class ScriptedBackend : public PlannerBackend {
public:
    std::vector<TaskPlan> generate(const PlanningContext& ctx) override {
        const SceneGraph& graph = *ctx.graph;
        std::vector<std::vector<std::string>> bindings;  // per goal pair
        for (const auto& goal : ctx.command.goal) {
            std::vector<std::string> matches;
            for (const auto& obj : graph.objects) {
                if (obj.on_furniture.empty()) continue;  // currently held
                if (obj.name == goal.category_or_object ||
                    base_name(obj.name) == goal.category_or_object ||
                    obj.attributes.category == goal.category_or_object)
                    matches.push_back(obj.name);
            }
            bindings.push_back(std::move(matches));
        }

        // when the robot is mid-carry, the plan must start by unloading the
        // held object: onto its goal destination when it matches a goal token,
        // onto the current furniture otherwise
        auto matches_token = [&](const ObjectNode& obj, const std::string& token) {
            return obj.name == token || base_name(obj.name) == token ||
                   obj.attributes.category == token;
        };
        int held_goal = -1;
        if (ctx.state.holding) {
            const ObjectNode* held = graph.find_object(*ctx.state.holding);
            if (held)
                for (size_t gi = 0; gi < ctx.command.goal.size(); ++gi)
                    if (matches_token(*held, ctx.command.goal[gi].category_or_object)) {
                        held_goal = static_cast<int>(gi);
                        break;
                    }
        }

        std::vector<TaskPlan> plans;
        auto emit = [&](const std::vector<int>& goal_order, int rotation) {
            TaskPlan plan;
            if (ctx.state.holding) {
                if (held_goal >= 0) {
                    const FurnitureNode* dst =
                        graph.find_furniture(ctx.command.goal[held_goal].destination);
                    if (!dst) return;
                    plan.actions.push_back(HighLevelAction::navigate(dst->name, dst->room));
                    plan.actions.push_back(HighLevelAction::place(*ctx.state.holding, dst->name));
                } else if (ctx.state.at_furniture) {
                    plan.actions.push_back(
                        HighLevelAction::place(*ctx.state.holding, *ctx.state.at_furniture));
                } else {
                    return;
                }
            }
            for (int gi : goal_order) {
                if (gi == held_goal) continue;
                const auto& goal = ctx.command.goal[gi];
                const auto& candidates = bindings[gi];
                if (candidates.empty()) return;
                const std::string& obj_name =
                    candidates[(rotation + ctx.variant_offset) % candidates.size()];
                const ObjectNode* obj = graph.find_object(obj_name);
                const FurnitureNode* src = graph.find_furniture(obj->on_furniture);
                const FurnitureNode* dst = graph.find_furniture(goal.destination);
                if (!src || !dst) return;
                plan.actions.push_back(HighLevelAction::navigate(src->name, src->room));
                plan.actions.push_back(HighLevelAction::pickup(obj->name, src->name));
                plan.actions.push_back(HighLevelAction::navigate(dst->name, dst->room));
                plan.actions.push_back(HighLevelAction::place(obj->name, dst->name));
            }
            if (plan.actions.empty()) return;
            if (std::find(plans.begin(), plans.end(), plan) == plans.end())
                plans.push_back(std::move(plan));
        };

        std::vector<int> order(ctx.command.goal.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        for (int rotation = 0; static_cast<int>(plans.size()) < ctx.m_candidates &&
                               rotation < ctx.m_candidates + 8;
             ++rotation)
            emit(order, rotation);
        // pad by permuting goal order when binding rotation runs dry
        std::vector<int> permuted = order;
        while (static_cast<int>(plans.size()) < ctx.m_candidates &&
               std::next_permutation(permuted.begin(), permuted.end()))
            emit(permuted, 0);
        if (static_cast<int>(plans.size()) < ctx.m_candidates)
            std::cerr << "warning: only " << plans.size() << " distinct candidates for command '"
                      << ctx.command.text << "'\n";
        return plans;
    }
};

struct PlanningExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// generate -> check loop, regenerating whole candidates with violation
// feedback until valid or retries run out. Exhausted candidates are dropped.
inline std::vector<TaskPlan> generate_valid_candidates(PlannerBackend& backend,
                                                       PlanningContext ctx, int max_retries = 5) {
    std::vector<TaskPlan> candidates = backend.generate(ctx);
    std::vector<TaskPlan> valid;
    std::vector<Violation> last_violations;
    for (size_t i = 0; i < candidates.size(); ++i) {
        TaskPlan plan = candidates[i];
        int retries = 0;
        while (true) {
            std::vector<Violation> violations = check_feasibility(plan, ctx.state, *ctx.graph);
            if (violations.empty()) {
                valid.push_back(plan);
                break;
            }
            last_violations = violations;
            if (retries++ >= max_retries) break;
            ctx.feedback = violations;
            std::vector<TaskPlan> regenerated = backend.generate(ctx);
            if (regenerated.empty()) break;
            plan = regenerated[std::min(i, regenerated.size() - 1)];
        }
    }
    if (valid.empty()) {
        std::string detail = "all plan candidates exhausted";
        for (const auto& v : last_violations)
            detail += "; [" + std::to_string(v.action_index) + "] " + to_string(v.rule) + ": " +
                      v.detail;
        throw PlanningExhausted(detail);
    }
    return valid;
}

}  // namespace tamp
