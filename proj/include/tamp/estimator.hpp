#pragma once

// Multimodal action-cost estimation: Chamfer-style path overlap for unknown
// navigation costs, semantic label transfer for unknown manipulation costs,
// plan total scoring, and best-plan selection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tamp/ledger.hpp"
#include "tamp/motion.hpp"
#include "tamp/oracle.hpp"

namespace tamp {

enum class NavEstimatorMode { Literal, Normalized };

struct OverlapParams {
    double epsilon_d = 1.0;  // meters
    NavEstimatorMode nav_estimator_mode = NavEstimatorMode::Normalized;
};

// P^o(p_i, p_j) = 100 (1 - d_am(i,j)/eps) + 100 (1 - d_am(j,i)/eps), with the
// average-minimum distances clamped at eps so each term stays in [0, 100].
inline double path_overlap(const Path& a, const Path& b, const OverlapParams& params,
                           double cell_size) {
    if (a.empty() || b.empty()) throw ParseError("path_overlap on empty path");
    auto mean_min_dist = [&](const std::vector<Cell>& from, const std::vector<Cell>& to) {
        double sum = 0.0;
        for (const Cell& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Cell& q : to) {
                double dx = (p.x - q.x) * cell_size;
                double dy = (p.y - q.y) * cell_size;
                best = std::min(best, std::hypot(dx, dy));
            }
            sum += std::min(best, params.epsilon_d);
        }
        return sum / from.size();
    };
    double d_ab = mean_min_dist(a.cells, b.cells);
    double d_ba = mean_min_dist(b.cells, a.cells);
    return 100.0 * (1.0 - d_ab / params.epsilon_d) + 100.0 * (1.0 - d_ba / params.epsilon_d);
}

// Base estimate used when no navigated record overlaps the presumed path:
// travel time at nominal speed plus distance, zero collisions.
inline double nav_fallback_estimate(const Path& presumed, double robot_speed) {
    return presumed.length_m + presumed.length_m / robot_speed;
}

inline double estimate_nav_cost_for_path(const Path& presumed, const CostLedger& ledger,
                                         const OverlapParams& params, double cell_size,
                                         double robot_speed) {
    if (params.nav_estimator_mode == NavEstimatorMode::Literal) {
        double total = 0.0;
        for (const auto& rec : ledger.nav_records)
            total += rec.cost * path_overlap(presumed, rec.path, params, cell_size) / 100.0;
        return total;
    }
    double weighted = 0.0, weight_sum = 0.0;
    for (const auto& rec : ledger.nav_records) {
        double w = path_overlap(presumed, rec.path, params, cell_size) / 200.0;
        weighted += rec.cost * w;
        weight_sum += w;
    }
    if (weight_sum <= 0.0) return nav_fallback_estimate(presumed, robot_speed);
    return weighted / weight_sum;
}

struct EstimatorContext {
    const SceneGraph& graph;
    const OccupancyGrid& grid;
    const CostLedger& ledger;
    const SemanticOracle& oracle;
    OverlapParams params;
    double robot_speed = 0.5;
    Cell start_cell;  // robot location before the plan's first action
};

inline double estimate_nav_cost(const HighLevelAction& action, Cell start_cell,
                                const EstimatorContext& ctx, Path* presumed_out = nullptr) {
    Path presumed = astar_to_furniture(ctx.grid, start_cell, action.target);
    if (presumed_out) *presumed_out = presumed;
    return estimate_nav_cost_for_path(presumed, ctx.ledger, ctx.params, ctx.grid.cell_size,
                                      ctx.robot_speed);
}

inline ManQuery build_man_query(const HighLevelAction& action, const SceneGraph& graph,
                                const CostLedger& ledger) {
    ManQuery q;
    q.kind = action.kind;
    q.object = action.target;
    q.furniture = action.second;
    if (const ObjectNode* obj = graph.find_object(action.target))
        q.object_attributes = obj->attributes;
    if (const FurnitureNode* fur = graph.find_furniture(action.second))
        q.furniture_attributes = fur->attributes;
    for (const auto& rec : ledger.man_records) {
        ManQueryRecord r;
        r.kind = rec.kind;
        r.object = rec.object;
        r.furniture = rec.furniture;
        if (const ObjectNode* obj = graph.find_object(rec.object))
            r.object_attributes = obj->attributes;
        if (const FurnitureNode* fur = graph.find_furniture(rec.furniture))
            r.furniture_attributes = fur->attributes;
        r.label = encode_cost(rec.cost);
        q.records.push_back(std::move(r));
    }
    return q;
}

inline std::pair<double, CostLabel> estimate_man_cost(const HighLevelAction& action,
                                                      const SceneGraph& graph,
                                                      const CostLedger& ledger,
                                                      const SemanticOracle& oracle) {
    if (ledger.man_records.empty()) return {0.0, CostLabel::Unknown};
    CostLabel label = oracle.infer(build_man_query(action, graph, ledger));
    return {decode_label(label), label};
}

struct PlanEstimate {
    int plan_index = 0;
    std::vector<double> nav_estimates;
    std::vector<double> man_estimates;
    int n_man_valid = 0;
    double total = 0.0;
};

// c_total = sum(nav) + sum(man) * N_man_valid / N_man. State threads through
// the plan symbolically so each presumed path starts where the previous one
// ended.
inline PlanEstimate score_plan(const TaskPlan& plan, const HighLevelState& state,
                               const EstimatorContext& ctx, int plan_index = 0) {
    PlanEstimate est;
    est.plan_index = plan_index;
    Cell cursor = ctx.start_cell;
    for (const auto& action : plan.actions) {
        if (action.kind == ActionKind::Navigate) {
            Path presumed;
            est.nav_estimates.push_back(estimate_nav_cost(action, cursor, ctx, &presumed));
            cursor = presumed.cells.back();
        } else {
            auto [value, label] = estimate_man_cost(action, ctx.graph, ctx.ledger, ctx.oracle);
            est.man_estimates.push_back(value);
            if (label != CostLabel::Unknown) est.n_man_valid += 1;
        }
    }
    double nav_sum = 0.0, man_sum = 0.0;
    for (double v : est.nav_estimates) nav_sum += v;
    for (double v : est.man_estimates) man_sum += v;
    est.total = nav_sum;
    if (!est.man_estimates.empty())
        est.total += man_sum * static_cast<double>(est.n_man_valid) /
                     static_cast<double>(est.man_estimates.size());
    return est;
}

// argmin of totals, lowest index on ties.
inline int select_best(const std::vector<PlanEstimate>& estimates) {
    if (estimates.empty()) throw ParseError("select_best on empty estimate list");
    int best = 0;
    for (size_t i = 1; i < estimates.size(); ++i)
        if (estimates[i].total < estimates[best].total) best = static_cast<int>(i);
    return best;
}

}  // namespace tamp
