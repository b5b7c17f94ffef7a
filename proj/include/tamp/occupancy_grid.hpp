#pragma once

// 2D occupancy grid with furniture/room regions and door cells. ASCII row
// encoding: '#' occupied, '.' free, 'D' door.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tamp/scene_graph.hpp"

namespace tamp {

struct Cell {
    int x = 0;
    int y = 0;

    auto operator<=>(const Cell&) const = default;
};

enum class CellKind { Free, Occupied, Door };

class OccupancyGrid {
public:
    int width = 0;
    int height = 0;
    double cell_size = 0.25;
    std::vector<CellKind> cells;  // row-major, y * width + x
    std::map<std::string, std::set<Cell>> furniture_regions;
    std::map<std::string, std::set<Cell>> room_regions;

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    CellKind at(Cell c) const { return cells[static_cast<size_t>(c.y) * width + c.x]; }
    bool is_free(Cell c) const { return in_bounds(c) && at(c) == CellKind::Free; }
    bool traversable(Cell c) const {
        return in_bounds(c) && at(c) != CellKind::Occupied;
    }

    // Free cells 8-adjacent to a furniture region, sorted for determinism.
    std::vector<Cell> adjacent_free_cells(const std::string& furniture_id) const {
        std::set<Cell> out;
        auto it = furniture_regions.find(furniture_id);
        if (it == furniture_regions.end())
            throw ParseError("unknown furniture region: " + furniture_id);
        for (const Cell& c : it->second) {
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    Cell n{c.x + dx, c.y + dy};
                    if (is_free(n) && !it->second.count(n)) out.insert(n);
                }
        }
        return {out.begin(), out.end()};
    }

    const std::string* room_of_cell(Cell c) const {
        for (const auto& [room, region] : room_regions)
            if (region.count(c)) return &room;
        return nullptr;
    }

    void validate() const {
        for (const auto& [fur, region] : furniture_regions) {
            // region cells must lie inside exactly the owning room's region
            const std::string* owner = nullptr;
            for (const Cell& c : region) {
                if (!in_bounds(c))
                    throw ParseError("furniture region " + fur + " out of bounds");
                const std::string* room = room_of_cell(c);
                if (!room)
                    throw ParseError("furniture region " + fur + " outside any room region");
                if (owner && *room != *owner)
                    throw ParseError("furniture region " + fur + " spans two rooms");
                owner = room;
            }
            if (adjacent_free_cells(fur).empty())
                throw ParseError("furniture " + fur + " has no adjacent free cell");
        }
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                Cell c{x, y};
                if (at(c) != CellKind::Door) continue;
                std::set<std::string> neighbours;
                const int dx4[] = {1, -1, 0, 0};
                const int dy4[] = {0, 0, 1, -1};
                for (int i = 0; i < 4; ++i) {
                    Cell n{x + dx4[i], y + dy4[i]};
                    if (!in_bounds(n)) continue;
                    if (const std::string* room = room_of_cell(n)) neighbours.insert(*room);
                }
                if (neighbours.size() < 2)
                    throw ParseError("door cell (" + std::to_string(x) + "," +
                                     std::to_string(y) + ") does not join two rooms");
            }
    }
};

inline OccupancyGrid load_occupancy_grid(const json& j) {
    OccupancyGrid g;
    g.cell_size = j.value("cell_size_m", 0.25);
    const auto& rows = j.at("rows");
    g.height = static_cast<int>(rows.size());
    for (int y = 0; y < g.height; ++y) {
        const std::string row = rows[y].get<std::string>();
        if (y == 0) g.width = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != g.width)
            throw ParseError("ragged grid row at y=" + std::to_string(y));
        for (char ch : row) {
            switch (ch) {
                case '.': g.cells.push_back(CellKind::Free); break;
                case '#': g.cells.push_back(CellKind::Occupied); break;
                case 'D': g.cells.push_back(CellKind::Door); break;
                default: throw ParseError(std::string("bad grid cell character: ") + ch);
            }
        }
    }
    auto read_regions = [](const json& obj) {
        std::map<std::string, std::set<Cell>> out;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            std::set<Cell> region;
            for (const auto& xy : it.value())
                region.insert(Cell{xy.at(0).get<int>(), xy.at(1).get<int>()});
            out[it.key()] = std::move(region);
        }
        return out;
    };
    if (j.contains("room_regions")) g.room_regions = read_regions(j["room_regions"]);
    if (j.contains("furniture_regions"))
        g.furniture_regions = read_regions(j["furniture_regions"]);
    g.validate();
    return g;
}

inline OccupancyGrid load_occupancy_grid(const std::string& document) {
    try {
        return load_occupancy_grid(json::parse(document));
    } catch (const json::exception& e) {
        throw ParseError(std::string("grid parse error: ") + e.what());
    }
}

inline json grid_to_json(const OccupancyGrid& g) {
    json j;
    j["cell_size_m"] = g.cell_size;
    std::vector<std::string> rows;
    for (int y = 0; y < g.height; ++y) {
        std::string row;
        for (int x = 0; x < g.width; ++x) {
            switch (g.at(Cell{x, y})) {
                case CellKind::Free: row += '.'; break;
                case CellKind::Occupied: row += '#'; break;
                case CellKind::Door: row += 'D'; break;
            }
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    auto write_regions = [](const std::map<std::string, std::set<Cell>>& regions) {
        json out = json::object();
        for (const auto& [name, region] : regions) {
            json cells = json::array();
            for (const Cell& c : region) cells.push_back(json::array({c.x, c.y}));
            out[name] = cells;
        }
        return out;
    };
    j["furniture_regions"] = write_regions(g.furniture_regions);
    j["room_regions"] = write_regions(g.room_regions);
    return j;
}

}  // namespace tamp
