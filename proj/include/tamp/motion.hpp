#pragma once

// Low-level motion layer: A* over the occupancy grid, stand-cell sampling
// around furniture, empirical cost computation, and execution of high-level
// actions against the world.

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include "tamp/world.hpp"

namespace tamp {

struct Path {
    std::vector<Cell> cells;
    double length_m = 0.0;

    bool empty() const { return cells.empty(); }
};

struct UnreachableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double path_length_m(const std::vector<Cell>& cells, double cell_size) {
    double len = 0.0;
    for (size_t i = 1; i < cells.size(); ++i) {
        int dx = std::abs(cells[i].x - cells[i - 1].x);
        int dy = std::abs(cells[i].y - cells[i - 1].y);
        len += (dx && dy) ? std::sqrt(2.0) * cell_size : cell_size;
    }
    return len;
}

// A* to any free cell 8-adjacent to the goal region. Step costs 1/sqrt(2) in
// cell units; doors traverse like free cells. Ties broken by lexicographic
// (x, y) so expansion order is deterministic.
inline Path astar(const OccupancyGrid& grid, Cell start, const std::vector<Cell>& goal_cells) {
    if (!grid.is_free(start) && grid.at(start) != CellKind::Door)
        throw UnreachableError("A* start cell not traversable");
    if (goal_cells.empty()) throw UnreachableError("A* goal region has no free-adjacent cell");
    std::set<Cell> goals(goal_cells.begin(), goal_cells.end());

    auto octile = [&](Cell c) {
        double best = std::numeric_limits<double>::infinity();
        for (const Cell& g : goals) {
            double dx = std::abs(c.x - g.x), dy = std::abs(c.y - g.y);
            best = std::min(best, std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy));
        }
        return best;
    };

    struct Node {
        double f;
        Cell cell;
        bool operator>(const Node& o) const {
            if (f != o.f) return f > o.f;
            return cell > o.cell;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
    std::map<Cell, double> g_cost;
    std::map<Cell, Cell> parent;
    g_cost[start] = 0.0;
    open.push({octile(start), start});

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        Cell c = node.cell;
        double g = g_cost[c];
        if (node.f > g + octile(c) + 1e-12) continue;  // stale entry
        if (goals.count(c)) {
            std::vector<Cell> cells{c};
            while (c != start) {
                c = parent[c];
                cells.push_back(c);
            }
            std::reverse(cells.begin(), cells.end());
            return Path{cells, path_length_m(cells, grid.cell_size)};
        }
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                Cell n{c.x + dx, c.y + dy};
                if (!grid.traversable(n)) continue;
                double step = (dx && dy) ? std::sqrt(2.0) : 1.0;
                double ng = g + step;
                auto it = g_cost.find(n);
                if (it == g_cost.end() || ng < it->second - 1e-12) {
                    g_cost[n] = ng;
                    parent[n] = c;
                    open.push({ng + octile(n), n});
                }
            }
    }
    throw UnreachableError("A* goal region unreachable");
}

inline Path astar_to_furniture(const OccupancyGrid& grid, Cell start,
                               const std::string& furniture) {
    return astar(grid, start, grid.adjacent_free_cells(furniture));
}

// N_l uniform samples among the free cells around a furniture region;
// distinct cells when enough exist, with replacement otherwise.
inline std::vector<Cell> sample_stand_cells(const OccupancyGrid& grid,
                                            const std::string& furniture, int n,
                                            std::mt19937_64& rng) {
    std::vector<Cell> candidates = grid.adjacent_free_cells(furniture);
    if (candidates.empty())
        throw UnreachableError("no free cell adjacent to " + furniture);
    std::vector<Cell> out;
    if (static_cast<int>(candidates.size()) >= n) {
        std::shuffle(candidates.begin(), candidates.end(), rng);
        out.assign(candidates.begin(), candidates.begin() + n);
    } else {
        std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
        for (int i = 0; i < n; ++i) out.push_back(candidates[pick(rng)]);
    }
    return out;
}

enum class CostKind { Nav, Man };

struct EmpiricalCost {
    HighLevelAction action;
    CostKind kind = CostKind::Nav;
    double value = 0.0;
    Path path;                   // nav only
    std::string start_furniture;  // nav key; empty at mission start
    std::string dest_furniture;   // nav key
};

// c^nav = gamma_nav * cc + t + d
inline EmpiricalCost empirical_nav_cost(const ExecutionOutcome& outcome, double gamma_nav) {
    EmpiricalCost c;
    c.kind = CostKind::Nav;
    c.value = gamma_nav * outcome.collisions + outcome.time_s + outcome.distance_m;
    c.path.cells = outcome.executed_path;
    return c;
}

// Mean over trials of gamma_man * (1 - success) + time.
inline EmpiricalCost empirical_man_cost(const std::vector<ExecutionOutcome>& trials,
                                        double gamma_man) {
    if (trials.empty()) throw ParseError("empirical_man_cost: no trials");
    EmpiricalCost c;
    c.kind = CostKind::Man;
    double sum = 0.0;
    for (const auto& t : trials) sum += gamma_man * (t.succeeded ? 0.0 : 1.0) + t.time_s;
    c.value = sum / trials.size();
    return c;
}

struct ActionResult {
    ExecutionOutcome outcome;
    EmpiricalCost cost;
    HighLevelState next_state;
    Cell end_cell;
    int attempts = 0;   // manipulation attempts
    int successes = 0;  // successful manipulation attempts
};

struct MotionParams {
    double gamma_nav = 10.0;
    double gamma_man = 100.0;
    int n_samples = 5;  // N_l stand-cell samples per manipulation estimate
    int retry_budget = 1;
};

// Executes one feasibility-checked action. Manipulation first runs N_l cost
// probes (simulated draws at sampled stand cells; they consume RNG but leave
// the world untouched), then the real attempt(s) up to the retry budget.
inline ActionResult execute_action(const HighLevelAction& action, const HighLevelState& state,
                                   SceneGraph& graph, const WorldConfig& config,
                                   std::mt19937_64& rng, Cell current_cell,
                                   const MotionParams& params) {
    ActionResult r;
    r.end_cell = current_cell;
    if (action.kind == ActionKind::Navigate) {
        Path path = astar_to_furniture(config.grid, current_cell, action.target);
        r.outcome = execute_navigation(path.cells, config, rng);
        r.cost = empirical_nav_cost(r.outcome, params.gamma_nav);
        r.cost.action = action;
        r.cost.path = path;
        r.cost.start_furniture = state.at_furniture.value_or("");
        r.cost.dest_furniture = action.target;
        r.end_cell = path.cells.back();
        r.next_state = step_dynamics(state, action, r.outcome, graph);
        return r;
    }

    const std::string& furniture = action.second;
    std::vector<Cell> stands = sample_stand_cells(config.grid, furniture, params.n_samples, rng);
    const DifficultyProfile& profile = config.profile_for(action.target, furniture);
    std::vector<ExecutionOutcome> probes;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> jitter(profile.time_mean - profile.time_jitter,
                                                  profile.time_mean + profile.time_jitter);
    for (size_t i = 0; i < stands.size(); ++i) {
        ExecutionOutcome probe;
        probe.succeeded = unit(rng) < profile.success_prob;
        probe.time_s = profile.time_jitter > 0.0 ? jitter(rng) : profile.time_mean;
        probes.push_back(probe);
    }
    r.cost = empirical_man_cost(probes, params.gamma_man);
    r.cost.action = action;

    HighLevelState current = state;
    for (int attempt = 0; attempt < std::max(1, params.retry_budget); ++attempt) {
        ExecutionOutcome o =
            execute_manipulation(action.kind, action.target, furniture, stands[0], config, rng);
        r.attempts += 1;
        r.outcome.time_s += o.time_s;
        if (o.succeeded) {
            r.successes += 1;
            r.outcome.succeeded = true;
            current = step_dynamics(current, action, o, graph);
            break;
        }
        r.outcome.succeeded = false;
    }
    r.next_state = current;
    return r;
}

}  // namespace tamp
