#pragma once

// LLM-backed candidate generation: one prompt round per generate() call,
// response parsed as a JSON array of plans (each a JSON array of action
// triples).

#include <sstream>
#include <string>
#include <vector>

#include "tamp/llm.hpp"
#include "tamp/planner.hpp"

namespace tamp {

inline std::string build_planner_prompt(const PlanningContext& ctx) {
    std::ostringstream out;
    out << "Command: " << ctx.command.text << "\n\n"
        << "Scene graph (JSON):\n"
        << serialize_scene_graph(*ctx.graph) << "\n"
        << "Available actions:\n"
        << ctx.action_docs << "\n";
    if (!ctx.ledger_summary.empty())
        out << "Known action costs:\n" << ctx.ledger_summary << "\n";
    if (!ctx.feedback.empty()) {
        out << "Your previous plan was infeasible:\n";
        for (const auto& v : ctx.feedback)
            out << "- action " << v.action_index << ": " << to_string(v.rule) << " (" << v.detail
                << ")\n";
        out << "\n";
    }
    out << "Emit exactly " << ctx.m_candidates
        << " different task plans as a JSON array of plans. Each plan is a JSON array of "
           "actions; each action is [\"navigate\"|\"pickup\"|\"place\", target, "
           "room_or_furniture]. Avoid actions with known hard costs. Output JSON only.\n";
    return out.str();
}

inline std::vector<TaskPlan> parse_plans_response(const std::string& text) {
    auto lo = text.find('[');
    auto hi = text.rfind(']');
    if (lo == std::string::npos || hi == std::string::npos || hi < lo)
        throw ParseError("no JSON array in planner response");
    std::vector<TaskPlan> plans;
    try {
        json j = json::parse(text.substr(lo, hi - lo + 1));
        for (const auto& plan_json : j) {
            TaskPlan plan;
            for (const auto& a : plan_json) plan.actions.push_back(action_from_json(a));
            plans.push_back(std::move(plan));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("planner response parse error: ") + e.what());
    }
    return plans;
}

class LlmBackend : public PlannerBackend {
public:
    explicit LlmBackend(LlmConfig config) : client_(std::move(config)) {}

    std::vector<TaskPlan> generate(const PlanningContext& ctx) override {
        const std::string reply = client_.complete(
            "You are a task planner for a household robot working over a scene graph.",
            build_planner_prompt(ctx));
        return parse_plans_response(reply);
    }

private:
    ChatClient client_;
};

}  // namespace tamp
