#pragma once

// Shared test fixtures: a small two-room flat and a synthetic nine-room house
// (26 furniture, 30 objects) with mixed manipulation difficulty and risky
// doors, mirroring the scale of the bundled train1_like fixture.

#include <string>
#include <vector>

#include "tamp/tamp.hpp"

namespace tamp::testsupport {

// Two rooms (kitchen | office) separated by a wall with one door at (6,3).
// counter_1 and table_1 in the kitchen, desk_1 in the office.
inline OccupancyGrid small_grid() {
    json j;
    j["cell_size_m"] = 0.25;
    j["rows"] = {
        "##....#....##",  // y=0, furniture blocks at both ends
        "##....#.....#",
        "......#......",
        "......D......",
        "......#......",
        "......#......",
        "##....#......",  // y=6
    };
    json fur = json::object();
    fur["counter_1"] = json::array({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    fur["table_1"] = json::array({{0, 6}, {1, 6}});
    fur["desk_1"] = json::array({{11, 0}, {12, 0}, {12, 1}});
    j["furniture_regions"] = fur;
    json rooms = json::object();
    json kitchen = json::array(), office = json::array();
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 13; ++x) {
            if (x < 6) kitchen.push_back(json::array({x, y}));
            if (x > 6) office.push_back(json::array({x, y}));
        }
    rooms["kitchen"] = kitchen;
    rooms["office"] = office;
    j["room_regions"] = rooms;
    return load_occupancy_grid(j);
}

inline SceneGraph small_scene() {
    json j;
    j["rooms"] = {json{{"name", "kitchen"}}, json{{"name", "office"}}};
    auto attrs = [](const char* loc, const char* cat, const char* use) {
        return json{{"location", loc}, {"category", cat}, {"usage", use}};
    };
    j["furniture"] = {
        json{{"name", "counter_1"},
             {"room", "kitchen"},
             {"attributes", attrs("kitchen counter", "surface", "food preparation")}},
        json{{"name", "table_1"},
             {"room", "kitchen"},
             {"attributes", attrs("kitchen table", "surface", "dining")}},
        json{{"name", "desk_1"},
             {"room", "office"},
             {"attributes", attrs("office desk", "surface", "working")}},
    };
    j["objects"] = {
        json{{"name", "cup_1"},
             {"on_furniture", "counter_1"},
             {"attributes", attrs("kitchen counter", "tableware", "drinking beverage")}},
        json{{"name", "cup_2"},
             {"on_furniture", "table_1"},
             {"attributes", attrs("kitchen table", "tableware", "drinking beverage")}},
        json{{"name", "phone_1"},
             {"on_furniture", "desk_1"},
             {"attributes", attrs("office desk", "electronics", "communication")}},
    };
    return load_scene_graph(j.dump());
}

inline WorldConfig small_world(double success_prob = 1.0, double door_risk = 0.0) {
    WorldConfig w;
    w.grid = small_grid();
    w.default_profile = DifficultyProfile{success_prob, 4.0, 0.0};
    w.door_risk[Cell{6, 3}] = door_risk;
    w.start_cell = Cell{3, 3};
    return w;
}

// ---------------------------------------------------------------------------
// Nine-room house: 3x3 rooms of 20x20 interior cells on a 64x64 grid, doors
// between adjacent rooms, 26 furniture blocks, 30 objects. Three goal
// categories (cup, book, phone) with four instances each; instances 1 and 2
// are hard to grasp (co-located on one furniture), 3 and 4 easy.
// ---------------------------------------------------------------------------

struct Scenario {
    SceneGraph graph;
    WorldConfig world;
    Mission mission;
    json scene_json;
    json world_json;
    json mission_json;
};

inline Scenario big_house(std::uint64_t seed = 0) {
    const int span = 21;  // wall line every 21 cells, 20-cell interiors
    const int size = 64;
    std::vector<std::string> rows(size, std::string(size, '.'));
    for (int i = 0; i < size; ++i) {
        for (int line : {0, 21, 42, 63}) {
            rows[line][i] = '#';
            rows[i][line] = '#';
        }
    }
    // doors: east walls and south walls between adjacent rooms
    std::vector<Cell> doors;
    for (int rj = 0; rj < 3; ++rj)
        for (int ri = 0; ri < 3; ++ri) {
            if (ri < 2) doors.push_back(Cell{span * (ri + 1), span * rj + 10});
            if (rj < 2) doors.push_back(Cell{span * ri + 10, span * (rj + 1)});
        }
    for (const Cell& d : doors) rows[d.y][d.x] = 'D';

    json room_regions = json::object();
    std::vector<std::string> room_names;
    for (int rj = 0; rj < 3; ++rj)
        for (int ri = 0; ri < 3; ++ri) {
            std::string name = "room_" + std::to_string(rj * 3 + ri);
            json region = json::array();
            for (int y = span * rj + 1; y <= span * rj + 20; ++y)
                for (int x = span * ri + 1; x <= span * ri + 20; ++x)
                    region.push_back(json::array({x, y}));
            room_regions[name] = region;
            room_names.push_back(name);
        }

    // 26 furniture blocks: three per room except room_8 (two), 2x2 cells
    json furniture_regions = json::object();
    std::vector<std::pair<std::string, std::string>> furniture;  // name, room
    const std::pair<int, int> offsets[3] = {{4, 4}, {13, 4}, {4, 13}};
    int fur_id = 0;
    for (int r = 0; r < 9; ++r) {
        int count = r == 8 ? 2 : 3;
        for (int k = 0; k < count; ++k) {
            std::string name = "fur_" + std::to_string(fur_id++);
            int bx = span * (r % 3) + 1 + offsets[k].first;
            int by = span * (r / 3) + 1 + offsets[k].second;
            json region = json::array();
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    rows[by + dy][bx + dx] = '#';
                    region.push_back(json::array({bx + dx, by + dy}));
                }
            furniture_regions[name] = region;
            furniture.push_back({name, room_names[r]});
        }
    }

    json grid_json;
    grid_json["cell_size_m"] = 0.25;
    grid_json["rows"] = rows;
    grid_json["furniture_regions"] = furniture_regions;
    grid_json["room_regions"] = room_regions;

    auto attrs = [](const std::string& loc, const std::string& cat, const std::string& use) {
        return json{{"location", loc}, {"category", cat}, {"usage", use}};
    };
    json scene;
    scene["rooms"] = json::array();
    for (const auto& name : room_names)
        scene["rooms"].push_back(json{{"name", name}, {"attributes", attrs(name, "", "")}});
    scene["furniture"] = json::array();
    for (const auto& [name, room] : furniture)
        scene["furniture"].push_back(
            json{{"name", name}, {"room", room}, {"attributes", attrs(room, "surface", "holding items")}});

    // goal categories: instances 1/2 of each sit together on a "hard" furniture
    struct Placement {
        std::string name, category, usage, furniture;
        bool hard;
    };
    std::vector<Placement> objects;
    const char* cats[3] = {"cup", "book", "phone"};
    const char* usages[3] = {"drinking beverage", "reading", "communication"};
    const char* hard_furs[3] = {"fur_0", "fur_6", "fur_12"};
    const char* easy_furs[3][2] = {{"fur_1", "fur_3"}, {"fur_7", "fur_9"}, {"fur_13", "fur_15"}};
    for (int c = 0; c < 3; ++c)
        for (int i = 1; i <= 4; ++i) {
            Placement p;
            p.name = std::string(cats[c]) + "_" + std::to_string(i);
            p.category = cats[c];
            p.usage = usages[c];
            p.hard = i <= 2;
            p.furniture = p.hard ? hard_furs[c] : easy_furs[c][i - 3];
            objects.push_back(p);
        }
    // 18 filler objects spread over remaining furniture
    for (int i = 0; i < 18; ++i) {
        Placement p;
        p.name = "item_" + std::to_string(i + 1);
        p.category = "misc";
        p.usage = "decoration";
        p.hard = false;
        p.furniture = "fur_" + std::to_string(16 + i % 10);
        objects.push_back(p);
    }
    scene["objects"] = json::array();
    for (const auto& p : objects)
        scene["objects"].push_back(json{
            {"name", p.name},
            {"on_furniture", p.furniture},
            {"attributes", attrs(p.furniture, p.category, p.usage)}});

    json world;
    world["grid"] = grid_json;
    world["robot_speed"] = 0.5;
    world["turn_time"] = 0.5;
    world["collision_time_penalty"] = 8.0;
    world["collision_detour_m"] = 1.0;
    world["start_cell"] = json::array({10, 10});
    json profiles = json::object();
    for (const auto& p : objects) {
        double sp = p.hard ? 0.05 : 0.95;
        profiles[p.name + "@" + p.furniture] =
            json{{"success_prob", sp}, {"time_mean", 4.0}, {"time_jitter", 1.0}};
    }
    world["profiles"] = profiles;
    world["default_profile"] =
        json{{"success_prob", 0.95}, {"time_mean", 4.0}, {"time_jitter", 1.0}};
    json door_risk = json::object();
    for (size_t i = 0; i < doors.size(); ++i) {
        double risk = i < 2 ? 0.9 : 0.05;  // two hazardous routes
        door_risk[std::to_string(doors[i].x) + "," + std::to_string(doors[i].y)] = risk;
    }
    world["door_risk"] = door_risk;

    json mission;
    const char* dests[3][3] = {
        {"fur_4", "fur_10", "fur_16"}, {"fur_5", "fur_11", "fur_17"}, {"fur_8", "fur_14", "fur_20"}};
    mission["commands"] = json::array();
    const char* texts[3] = {"set up breakfast", "set up the online meeting", "fetch reading material"};
    for (int c = 0; c < 3; ++c) {
        json goal = json::array();
        for (int g = 0; g < 3; ++g)
            goal.push_back(json{{"category_or_object", cats[g]}, {"destination", dests[c][g]}});
        mission["commands"].push_back(json{{"text", texts[c]}, {"goal", goal}});
    }

    Scenario s;
    s.scene_json = scene;
    s.world_json = world;
    s.mission_json = mission;
    s.graph = load_scene_graph(scene.dump());
    s.world = load_world_config(world);
    s.world.rng_seed = seed;
    s.mission = load_mission(mission);
    return s;
}

}  // namespace tamp::testsupport
