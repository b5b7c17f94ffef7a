#pragma once

// Seedable ground-truth world: navigation outcomes with stochastic door
// collisions, manipulation outcomes drawn from difficulty profiles, and the
// symbolic environment dynamics.

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "tamp/actions.hpp"
#include "tamp/occupancy_grid.hpp"
#include "tamp/scene_graph.hpp"

namespace tamp {

struct DifficultyProfile {
    double success_prob = 1.0;
    double time_mean = 4.0;
    double time_jitter = 0.0;
};

struct WorldConfig {
    OccupancyGrid grid;
    std::map<Cell, double> door_risk;
    std::map<std::string, DifficultyProfile> profiles;  // key "object@furniture"
    std::optional<DifficultyProfile> default_profile;
    double robot_speed = 0.5;    // m/s
    double turn_time = 0.5;      // s per 45 degrees
    double collision_time_penalty = 8.0;
    double collision_detour_m = 1.0;
    std::uint64_t rng_seed = 0;
    std::optional<Cell> start_cell;

    std::string profile_key(const std::string& object, const std::string& furniture) const {
        return object + "@" + furniture;
    }
    const DifficultyProfile& profile_for(const std::string& object,
                                         const std::string& furniture) const {
        auto it = profiles.find(profile_key(object, furniture));
        if (it != profiles.end()) return it->second;
        if (default_profile) return *default_profile;
        throw ParseError("no manipulation profile for " + object + "@" + furniture);
    }
};

struct ExecutionOutcome {
    bool succeeded = true;
    double time_s = 0.0;
    double distance_m = 0.0;
    int collisions = 0;
    std::vector<Cell> executed_path;  // navigation only
};

// Fixed splitting rule: one substream per (mission seed, label). Draws in one
// substream never shift another, so instrumentation cannot perturb outcomes.
inline std::mt19937_64 make_rng_stream(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return std::mt19937_64(seed ^ h);
}

struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// s^{h}_{k+1} from (state, action, outcome). Mutates the scene graph's object
// placement on successful pickup/place; a failed manipulation leaves both the
// state and the graph untouched.
inline HighLevelState step_dynamics(const HighLevelState& state, const HighLevelAction& action,
                                    const ExecutionOutcome& outcome, SceneGraph& graph) {
    HighLevelState next = state;
    switch (action.kind) {
        case ActionKind::Navigate:
            next.at_furniture = action.target;
            next.at_room = action.second;
            break;
        case ActionKind::Pickup: {
            if (!state.hand_free())
                throw PreconditionViolation("pickup while holding " + *state.holding);
            if (state.at_furniture != action.second)
                throw PreconditionViolation("pickup at wrong furniture: " + action.str());
            ObjectNode* obj = graph.find_object(action.target);
            if (!obj || obj->on_furniture != action.second)
                throw PreconditionViolation("object not on furniture: " + action.str());
            if (outcome.succeeded) {
                next.holding = action.target;
                obj->on_furniture = "";  // in hand
            }
            break;
        }
        case ActionKind::Place: {
            if (state.holding != action.target)
                throw PreconditionViolation("place without holding: " + action.str());
            if (state.at_furniture != action.second)
                throw PreconditionViolation("place at wrong furniture: " + action.str());
            if (outcome.succeeded) {
                next.holding.reset();
                ObjectNode* obj = graph.find_object(action.target);
                if (obj) obj->on_furniture = action.second;
            }
            break;
        }
    }
    return next;
}

inline int turn_units(Cell a, Cell b, Cell c) {
    auto octant = [](int dx, int dy) {
        static const int table[3][3] = {{3, 4, 5}, {2, -1, 6}, {1, 0, 7}};
        return table[dy + 1][dx + 1];
    };
    int h1 = octant(b.x - a.x, b.y - a.y);
    int h2 = octant(c.x - b.x, c.y - b.y);
    int diff = std::abs(h1 - h2);
    return std::min(diff, 8 - diff);
}

inline ExecutionOutcome execute_navigation(const std::vector<Cell>& path,
                                           const WorldConfig& config, std::mt19937_64& rng) {
    ExecutionOutcome out;
    out.executed_path = path;
    const OccupancyGrid& grid = config.grid;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int turns = 0;
    for (size_t i = 0; i < path.size(); ++i) {
        if (!grid.traversable(path[i]))
            throw ParseError("navigation path crosses occupied cell");
        if (i > 0) {
            int dx = std::abs(path[i].x - path[i - 1].x);
            int dy = std::abs(path[i].y - path[i - 1].y);
            out.distance_m += (dx && dy) ? std::sqrt(2.0) * grid.cell_size : grid.cell_size;
        }
        if (i > 1) turns += turn_units(path[i - 2], path[i - 1], path[i]);
        if (grid.at(path[i]) == CellKind::Door) {
            auto risk = config.door_risk.find(path[i]);
            double p = risk == config.door_risk.end() ? 0.0 : risk->second;
            if (p > 0.0 && unit(rng) < p) out.collisions += 1;
        }
    }
    out.distance_m += out.collisions * config.collision_detour_m;
    out.time_s = out.distance_m / config.robot_speed + turns * config.turn_time +
                 out.collisions * config.collision_time_penalty;
    return out;
}

inline ExecutionOutcome execute_manipulation(ActionKind kind, const std::string& object,
                                             const std::string& furniture, Cell stand_cell,
                                             const WorldConfig& config, std::mt19937_64& rng) {
    if (kind == ActionKind::Navigate) throw ParseError("execute_manipulation on navigate");
    const DifficultyProfile& profile = config.profile_for(object, furniture);
    bool adjacent = false;
    for (const Cell& c : config.grid.adjacent_free_cells(furniture))
        if (c == stand_cell) adjacent = true;
    if (!adjacent) throw ParseError("stand cell not adjacent to " + furniture);
    ExecutionOutcome out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.succeeded = unit(rng) < profile.success_prob;
    std::uniform_real_distribution<double> jitter(profile.time_mean - profile.time_jitter,
                                                  profile.time_mean + profile.time_jitter);
    out.time_s = profile.time_jitter > 0.0 ? jitter(rng) : profile.time_mean;
    return out;
}

inline WorldConfig load_world_config(const json& j) {
    WorldConfig w;
    w.grid = load_occupancy_grid(j.at("grid"));
    if (j.contains("door_risk")) {
        for (auto it = j["door_risk"].begin(); it != j["door_risk"].end(); ++it) {
            const std::string key = it.key();
            auto comma = key.find(',');
            Cell c{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
            w.door_risk[c] = it.value().get<double>();
        }
    }
    auto read_profile = [](const json& p) {
        DifficultyProfile d;
        d.success_prob = p.value("success_prob", 1.0);
        d.time_mean = p.value("time_mean", 4.0);
        d.time_jitter = p.value("time_jitter", 0.0);
        if (d.time_mean <= 0.0 || d.time_mean - d.time_jitter < 0.0)
            throw ParseError("invalid difficulty profile timing");
        return d;
    };
    if (j.contains("profiles"))
        for (auto it = j["profiles"].begin(); it != j["profiles"].end(); ++it)
            w.profiles[it.key()] = read_profile(it.value());
    if (j.contains("default_profile")) w.default_profile = read_profile(j["default_profile"]);
    w.robot_speed = j.value("robot_speed", 0.5);
    w.turn_time = j.value("turn_time", 0.5);
    w.collision_time_penalty = j.value("collision_time_penalty", 8.0);
    w.collision_detour_m = j.value("collision_detour_m", 1.0);
    if (j.contains("start_cell"))
        w.start_cell = Cell{j["start_cell"].at(0).get<int>(), j["start_cell"].at(1).get<int>()};
    return w;
}

inline WorldConfig load_world_config(const std::string& document) {
    try {
        return load_world_config(json::parse(document));
    } catch (const json::exception& e) {
        throw ParseError(std::string("world config parse error: ") + e.what());
    }
}

}  // namespace tamp
