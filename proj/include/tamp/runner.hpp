#pragma once

// Mission orchestration: the interleaved algorithm, the open-loop and
// reactive baselines, metric accumulation, and report emission.

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tamp/estimator.hpp"
#include "tamp/ledger.hpp"
#include "tamp/motion.hpp"
#include "tamp/planner.hpp"
#include "tamp/world.hpp"

namespace tamp {

enum class AlgorithmKind { InterLlm, OpenLoop, Reactive };

inline std::string to_string(AlgorithmKind k) {
    switch (k) {
        case AlgorithmKind::InterLlm: return "inter_llm";
        case AlgorithmKind::OpenLoop: return "open_loop";
        case AlgorithmKind::Reactive: return "reactive";
    }
    return "?";
}

inline AlgorithmKind algorithm_from_string(const std::string& s) {
    if (s == "inter" || s == "inter_llm") return AlgorithmKind::InterLlm;
    if (s == "openloop" || s == "open_loop") return AlgorithmKind::OpenLoop;
    if (s == "reactive") return AlgorithmKind::Reactive;
    throw ParseError("unknown algorithm: " + s);
}

struct RunConfig {
    AlgorithmKind algorithm = AlgorithmKind::InterLlm;
    std::uint64_t seed = 0;
    int m_candidates = 3;
    double gamma_nav = 10.0;
    double gamma_man = 100.0;
    double gamma_obj = 100.0;
    double sigma = 0.8;
    OverlapParams overlap;
    int retry_budget = 0;   // 0 = per-algorithm default (1, or 3 for reactive)
    int replan_budget = 3;  // reactive regenerations per command
    int n_samples = 5;      // N_l
    int max_generate_retries = 5;
    std::string backend = "scripted";

    int effective_retry_budget() const {
        if (retry_budget > 0) return retry_budget;
        return algorithm == AlgorithmKind::Reactive ? 3 : 1;
    }
};

struct ObjectRow {
    int command_index = 0;
    int goal_index = 0;
    std::string goal_token;
    std::string destination;
    std::string object;  // bound object, empty if never attempted
    int cc_nav = 0;
    double d_nav = 0.0;
    int man_attempts = 0;
    int man_successes = 0;
    double t_exe = 0.0;
    bool fulfilled = false;

    double sr_man() const {
        return man_attempts > 0 ? static_cast<double>(man_successes) / man_attempts : 0.0;
    }
};

struct ActionLogEntry {
    int command_index = 0;
    HighLevelAction action;
    bool skipped = false;
    bool succeeded = true;
    double time_s = 0.0;
    double distance_m = 0.0;
    int collisions = 0;
    double empirical_cost = 0.0;
    std::string cost_kind;  // "nav" or "man"
};

struct MissionReport {
    std::vector<ObjectRow> rows;
    std::vector<ActionLogEntry> action_log;
    double j_total = 0.0;
    int cc_nav = 0;
    double d_nav = 0.0;
    double t_exe = 0.0;
    double sr_man = 1.0;
    double sr_obj = 0.0;
    double m_overall = 0.0;
    int skipped_actions = 0;
    int abandoned_commands = 0;  // planning exhausted / unreachable targets
    json provenance;
};

inline double compute_overall_metric(int cc_nav, double t_exe, double d_nav, double sr_man,
                                     double sr_obj, const RunConfig& config) {
    return config.gamma_nav * cc_nav + t_exe + d_nav + config.gamma_man * (1.0 - sr_man) +
           config.gamma_obj * (1.0 - sr_obj);
}

inline bool token_matches(const ObjectNode& obj, const std::string& token) {
    return obj.name == token || base_name(obj.name) == token ||
           obj.attributes.category == token;
}

inline Cell mission_start_cell(const WorldConfig& world) {
    if (world.start_cell) return *world.start_cell;
    for (int y = 0; y < world.grid.height; ++y)
        for (int x = 0; x < world.grid.width; ++x)
            if (world.grid.is_free(Cell{x, y})) return Cell{x, y};
    throw ParseError("grid has no free cell");
}

namespace detail {

struct SlotState {
    ObjectRow row;
    bool bound = false;
};

// Attribution object for each plan action: manipulations attribute to their
// own object, navigations to the object of the next manipulation.
inline std::vector<std::string> attribution_objects(const TaskPlan& plan) {
    std::vector<std::string> out(plan.actions.size());
    std::string current;
    for (int i = static_cast<int>(plan.actions.size()) - 1; i >= 0; --i) {
        if (plan.actions[i].kind != ActionKind::Navigate) current = plan.actions[i].target;
        out[i] = current;
    }
    // leading actions before any manipulation fall forward to the last object
    std::string last;
    for (size_t i = 0; i < out.size(); ++i) {
        if (!out[i].empty()) last = out[i];
        else out[i] = last;
    }
    return out;
}

inline SlotState* slot_for_object(std::vector<SlotState*>& slots, const SceneGraph& graph,
                                  const std::string& object) {
    const ObjectNode* obj = graph.find_object(object);
    for (SlotState* s : slots)
        if (s->bound && s->row.object == object) return s;
    for (SlotState* s : slots) {
        if (s->bound || s->row.fulfilled) continue;
        if (obj && token_matches(*obj, s->row.goal_token)) return s;
    }
    for (SlotState* s : slots)
        if (obj && token_matches(*obj, s->row.goal_token)) return s;
    return slots.empty() ? nullptr : slots.front();
}

// Runtime precondition check against the actual world state; a false result
// after an upstream manipulation failure means the action must be skipped.
inline bool runtime_executable(const HighLevelAction& a, const HighLevelState& state,
                               const SceneGraph& graph) {
    switch (a.kind) {
        case ActionKind::Navigate: return true;
        case ActionKind::Pickup: {
            const ObjectNode* obj = graph.find_object(a.target);
            return state.hand_free() && state.at_furniture == a.second && obj &&
                   obj->on_furniture == a.second;
        }
        case ActionKind::Place:
            return state.holding == a.target && state.at_furniture == a.second;
    }
    return false;
}

}  // namespace detail

class MissionRunner {
public:
    MissionRunner(const Mission& mission, const SceneGraph& graph, const WorldConfig& world,
                  const RunConfig& config, PlannerBackend& backend, const SemanticOracle& oracle,
                  CostLedger ledger = {})
        : mission_(mission),
          graph_(graph),
          world_(world),
          config_(config),
          backend_(backend),
          oracle_(oracle),
          ledger_(std::move(ledger)),
          rng_(make_rng_stream(config.seed, "mission")) {
        world_.rng_seed = config.seed;
        state_ = HighLevelState{};
        cell_ = mission_start_cell(world_);
        initial_ledger_ = ledger_to_json(ledger_);
    }

    MissionReport run() {
        for (size_t ci = 0; ci < mission_.commands.size(); ++ci) {
            std::vector<detail::SlotState> slots;
            const Command& cmd = mission_.commands[ci];
            for (size_t gi = 0; gi < cmd.goal.size(); ++gi) {
                detail::SlotState s;
                s.row.command_index = static_cast<int>(ci);
                s.row.goal_index = static_cast<int>(gi);
                s.row.goal_token = cmd.goal[gi].category_or_object;
                s.row.destination = cmd.goal[gi].destination;
                slots.push_back(std::move(s));
            }
            try {
                run_command(static_cast<int>(ci), cmd, slots);
            } catch (const PlanningExhausted& e) {
                report_.abandoned_commands += 1;
                std::cerr << "command " << ci << " abandoned: " << e.what() << "\n";
            } catch (const UnreachableError& e) {
                report_.abandoned_commands += 1;
                std::cerr << "command " << ci << " abandoned: " << e.what() << "\n";
            }
            std::set<std::string> claimed;
            for (const auto& s : slots)
                if (s.bound) claimed.insert(s.row.object);
            for (auto& s : slots) {
                if (s.bound) {
                    const ObjectNode* obj = graph_.find_object(s.row.object);
                    s.row.fulfilled = obj && obj->on_furniture == s.row.destination;
                }
                // a replanned substitute object also satisfies the goal
                if (!s.row.fulfilled) {
                    for (const auto& obj : graph_.objects) {
                        if (!token_matches(obj, s.row.goal_token)) continue;
                        if (obj.on_furniture != s.row.destination) continue;
                        if (claimed.count(obj.name) && obj.name != s.row.object) continue;
                        s.row.fulfilled = true;
                        s.row.object = obj.name;
                        claimed.insert(obj.name);
                        break;
                    }
                }
                report_.rows.push_back(s.row);
            }
        }
        finalize();
        return report_;
    }

    const SceneGraph& final_graph() const { return graph_; }
    const CostLedger& ledger() const { return ledger_; }

private:
    void run_command(int ci, const Command& cmd, std::vector<detail::SlotState>& slots) {
        PlanningContext ctx;
        ctx.command = cmd;
        ctx.state = state_;
        ctx.graph = &graph_;
        ctx.m_candidates = config_.m_candidates;
        const bool interleaved = config_.algorithm == AlgorithmKind::InterLlm;
        if (interleaved) ctx.ledger_summary = ledger_.snapshot_summary();

        std::vector<TaskPlan> candidates =
            generate_valid_candidates(backend_, ctx, config_.max_generate_retries);

        TaskPlan plan;
        if (interleaved) {
            EstimatorContext ectx{graph_,  world_.grid,         ledger_, oracle_,
                                  config_.overlap, world_.robot_speed, cell_};
            std::vector<PlanEstimate> estimates;
            for (size_t i = 0; i < candidates.size(); ++i)
                estimates.push_back(
                    score_plan(candidates[i], state_, ectx, static_cast<int>(i)));
            plan = candidates[select_best(estimates)];
        } else {
            plan = candidates.front();
        }

        int replans = 0;
        while (true) {
            bool failure = execute_plan(ci, plan, slots);
            if (!failure || config_.algorithm != AlgorithmKind::Reactive) break;
            if (replans++ >= config_.replan_budget) break;
            // regenerate for the remaining goal from the current state
            Command remaining;
            remaining.text = cmd.text;
            for (const auto& goal : cmd.goal) {
                bool done = false;
                for (const auto& obj : graph_.objects)
                    if (token_matches(obj, goal.category_or_object) &&
                        obj.on_furniture == goal.destination)
                        done = true;
                if (!done) remaining.goal.push_back(goal);
            }
            if (remaining.goal.empty()) break;
            PlanningContext rctx;
            rctx.command = remaining;
            rctx.state = state_;
            rctx.graph = &graph_;
            rctx.m_candidates = config_.m_candidates;
            rctx.variant_offset = replans;
            try {
                plan = generate_valid_candidates(backend_, rctx, config_.max_generate_retries)
                           .front();
            } catch (const PlanningExhausted&) {
                break;
            }
        }
    }

    // Executes one plan; returns true if any manipulation ultimately failed.
    bool execute_plan(int ci, const TaskPlan& plan, std::vector<detail::SlotState>& slots) {
        MotionParams params;
        params.gamma_nav = config_.gamma_nav;
        params.gamma_man = config_.gamma_man;
        params.n_samples = config_.n_samples;
        params.retry_budget = config_.effective_retry_budget();

        std::vector<std::string> attribution = detail::attribution_objects(plan);
        std::vector<detail::SlotState*> slot_ptrs;
        for (auto& s : slots) slot_ptrs.push_back(&s);
        bool any_failure = false;

        for (size_t i = 0; i < plan.actions.size(); ++i) {
            const HighLevelAction& action = plan.actions[i];
            ActionLogEntry log;
            log.command_index = ci;
            log.action = action;
            if (!detail::runtime_executable(action, state_, graph_)) {
                log.skipped = true;
                log.succeeded = false;
                report_.skipped_actions += 1;
                report_.action_log.push_back(log);
                continue;
            }
            ActionResult r = execute_action(action, state_, graph_, world_, rng_, cell_, params);
            state_ = r.next_state;
            cell_ = r.end_cell;
            if (config_.algorithm == AlgorithmKind::InterLlm) ledger_.update(r.cost);

            log.succeeded = r.outcome.succeeded;
            log.time_s = r.outcome.time_s;
            log.distance_m = r.outcome.distance_m;
            log.collisions = r.outcome.collisions;
            log.empirical_cost = r.cost.value;
            log.cost_kind = r.cost.kind == CostKind::Nav ? "nav" : "man";
            report_.action_log.push_back(log);
            report_.j_total += r.cost.value;

            detail::SlotState* slot =
                detail::slot_for_object(slot_ptrs, graph_, attribution[i]);
            if (slot) {
                slot->row.cc_nav += r.outcome.collisions;
                slot->row.d_nav += r.outcome.distance_m;
                slot->row.t_exe += r.outcome.time_s;
                slot->row.man_attempts += r.attempts;
                slot->row.man_successes += r.successes;
                if (action.kind != ActionKind::Navigate && !slot->bound) {
                    slot->bound = true;
                    slot->row.object = action.target;
                }
            }
            if (action.kind != ActionKind::Navigate && !r.outcome.succeeded) any_failure = true;
        }
        return any_failure;
    }

    void finalize() {
        int attempts = 0, successes = 0, fulfilled = 0;
        for (const auto& row : report_.rows) {
            report_.cc_nav += row.cc_nav;
            report_.d_nav += row.d_nav;
            report_.t_exe += row.t_exe;
            attempts += row.man_attempts;
            successes += row.man_successes;
            if (row.fulfilled) fulfilled += 1;
        }
        report_.sr_man = attempts > 0 ? static_cast<double>(successes) / attempts : 1.0;
        report_.sr_obj = report_.rows.empty()
                             ? 0.0
                             : static_cast<double>(fulfilled) / report_.rows.size();
        report_.m_overall = compute_overall_metric(report_.cc_nav, report_.t_exe, report_.d_nav,
                                                   report_.sr_man, report_.sr_obj, config_);
        report_.provenance = json{
            {"algorithm", to_string(config_.algorithm)},
            {"seed", config_.seed},
            {"m_candidates", config_.m_candidates},
            {"gamma_nav", config_.gamma_nav},
            {"gamma_man", config_.gamma_man},
            {"gamma_obj", config_.gamma_obj},
            {"sigma", config_.sigma},
            {"epsilon_d", config_.overlap.epsilon_d},
            {"nav_estimator_mode",
             config_.overlap.nav_estimator_mode == NavEstimatorMode::Normalized ? "normalized"
                                                                                : "literal"},
            {"retry_budget", config_.effective_retry_budget()},
            {"replan_budget", config_.replan_budget},
            {"n_samples", config_.n_samples},
            {"backend", config_.backend},
            {"ledger_initial", initial_ledger_},
            {"ledger_final", ledger_to_json(ledger_)},
        };
    }

    Mission mission_;
    SceneGraph graph_;
    WorldConfig world_;
    RunConfig config_;
    PlannerBackend& backend_;
    const SemanticOracle& oracle_;
    CostLedger ledger_;
    std::mt19937_64 rng_;
    HighLevelState state_;
    Cell cell_;
    MissionReport report_;
    json initial_ledger_;
};

inline MissionReport run_mission(const Mission& mission, const SceneGraph& graph,
                                 const WorldConfig& world, const RunConfig& config,
                                 PlannerBackend& backend, const SemanticOracle& oracle,
                                 CostLedger ledger = {}) {
    MissionRunner runner(mission, graph, world, config, backend, oracle, std::move(ledger));
    return runner.run();
}

inline json report_to_json(const MissionReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back(json{{"command_index", r.command_index},
                            {"goal_index", r.goal_index},
                            {"goal_token", r.goal_token},
                            {"destination", r.destination},
                            {"object", r.object},
                            {"cc_nav", r.cc_nav},
                            {"d_nav", r.d_nav},
                            {"sr_man", r.sr_man()},
                            {"man_attempts", r.man_attempts},
                            {"man_successes", r.man_successes},
                            {"t_exe", r.t_exe},
                            {"fulfilled", r.fulfilled}});
    json log = json::array();
    for (const auto& e : report.action_log)
        log.push_back(json{{"command_index", e.command_index},
                           {"action", action_to_json(e.action)},
                           {"skipped", e.skipped},
                           {"succeeded", e.succeeded},
                           {"time_s", e.time_s},
                           {"distance_m", e.distance_m},
                           {"collisions", e.collisions},
                           {"empirical_cost", e.empirical_cost},
                           {"cost_kind", e.cost_kind}});
    return json{{"rows", rows},
                {"action_log", log},
                {"totals",
                 json{{"j_total", report.j_total},
                      {"cc_nav", report.cc_nav},
                      {"d_nav", report.d_nav},
                      {"t_exe", report.t_exe},
                      {"sr_man", report.sr_man},
                      {"sr_obj", report.sr_obj},
                      {"m_overall", report.m_overall},
                      {"skipped_actions", report.skipped_actions},
                      {"abandoned_commands", report.abandoned_commands}}},
                {"provenance", report.provenance}};
}

inline std::string report_csv(const MissionReport& report) {
    std::ostringstream out;
    out << "command_index,goal_index,object,cc_nav,d_nav,sr_man,t_exe,fulfilled\n";
    for (const auto& r : report.rows)
        out << r.command_index << ',' << r.goal_index << ',' << r.object << ',' << r.cc_nav << ','
            << r.d_nav << ',' << r.sr_man() << ',' << r.t_exe << ',' << (r.fulfilled ? 1 : 0)
            << "\n";
    out << "total,," << ',' << report.cc_nav << ',' << report.d_nav << ',' << report.sr_man << ','
        << report.t_exe << ',' << report.sr_obj << "\n";
    return out.str();
}

// Cumulative per-object m_overall polylines, one per report.
inline std::string reports_svg(const std::vector<std::pair<std::string, MissionReport>>& reports,
                               const RunConfig& config) {
    const int w = 640, h = 400, margin = 50;
    size_t max_rows = 1;
    double max_v = 1.0;
    std::vector<std::vector<double>> series;
    for (const auto& [name, report] : reports) {
        std::vector<double> cum;
        double acc = 0.0;
        for (const auto& r : report.rows) {
            acc += compute_overall_metric(r.cc_nav, r.t_exe, r.d_nav, r.sr_man(),
                                          r.fulfilled ? 1.0 : 0.0, config);
            cum.push_back(acc);
        }
        if (!cum.empty()) max_v = std::max(max_v, cum.back());
        max_rows = std::max(max_rows, cum.size());
        series.push_back(std::move(cum));
    }
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    for (size_t s = 0; s < series.size(); ++s) {
        if (series[s].empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % 5] << "\" points=\"";
        for (size_t i = 0; i < series[s].size(); ++i) {
            double x = margin + (w - 2.0 * margin) * (max_rows > 1 ? i / double(max_rows - 1) : 0);
            double y = h - margin - (h - 2.0 * margin) * series[s][i] / max_v;
            out << x << ',' << y << ' ';
        }
        out << "\"/>\n<text x=\"" << margin + 10 << "\" y=\"" << margin + 16 * (s + 1)
            << "\" fill=\"" << colors[s % 5] << "\">" << reports[s].first << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

}  // namespace tamp
