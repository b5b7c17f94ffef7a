#pragma once

// Known action costs: navigated records keyed by (start, dest) furniture pair,
// manipulated records keyed by (kind, object, furniture). Repeated
// observations fuse by pairwise averaging.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tamp/motion.hpp"
#include "tamp/oracle.hpp"

namespace tamp {

struct NavRecord {
    std::string start_furniture;
    std::string dest_furniture;
    Path path;
    double cost = 0.0;
};

struct ManRecord {
    ActionKind kind = ActionKind::Pickup;
    std::string object;
    std::string furniture;
    double cost = 0.0;
};

class CostLedger {
public:
    std::vector<NavRecord> nav_records;
    std::vector<ManRecord> man_records;

    bool empty() const { return nav_records.empty() && man_records.empty(); }

    // c_updated = (c_new + c_known) / 2 when the key exists, append otherwise.
    // Fused nav records keep the newer executed path.
    void update(const EmpiricalCost& cost) {
        if (cost.kind == CostKind::Nav) {
            for (auto& rec : nav_records) {
                if (rec.start_furniture == cost.start_furniture &&
                    rec.dest_furniture == cost.dest_furniture) {
                    rec.cost = (rec.cost + cost.value) / 2.0;
                    rec.path = cost.path;
                    return;
                }
            }
            nav_records.push_back(
                {cost.start_furniture, cost.dest_furniture, cost.path, cost.value});
        } else {
            for (auto& rec : man_records) {
                if (rec.kind == cost.action.kind && rec.object == cost.action.target &&
                    rec.furniture == cost.action.second) {
                    rec.cost = (rec.cost + cost.value) / 2.0;
                    return;
                }
            }
            man_records.push_back(
                {cost.action.kind, cost.action.target, cost.action.second, cost.value});
        }
    }

    const ManRecord* find_man(ActionKind kind, const std::string& object,
                              const std::string& furniture) const {
        for (const auto& rec : man_records)
            if (rec.kind == kind && rec.object == object && rec.furniture == furniture)
                return &rec;
        return nullptr;
    }

    // Compact listing embedded in candidate-generation prompts: manipulation
    // records as encoded labels, navigation records as raw costs.
    std::string snapshot_summary() const {
        std::ostringstream out;
        for (const auto& rec : man_records)
            out << "(" << rec.object << ", " << rec.furniture << ", "
                << to_string(encode_cost(rec.cost)) << ")\n";
        for (const auto& rec : nav_records)
            out << "(" << rec.start_furniture << " -> " << rec.dest_furniture << ", "
                << rec.cost << ")\n";
        return out.str();
    }
};

inline json ledger_to_json(const CostLedger& ledger) {
    json nav = json::array();
    for (const auto& rec : ledger.nav_records) {
        json cells = json::array();
        for (const Cell& c : rec.path.cells) cells.push_back(json::array({c.x, c.y}));
        nav.push_back(json{{"start", rec.start_furniture},
                           {"dest", rec.dest_furniture},
                           {"cost", rec.cost},
                           {"path", cells}});
    }
    json man = json::array();
    for (const auto& rec : ledger.man_records)
        man.push_back(json{{"kind", to_string(rec.kind)},
                           {"object", rec.object},
                           {"furniture", rec.furniture},
                           {"cost", rec.cost}});
    return json{{"nav", nav}, {"man", man}};
}

inline CostLedger ledger_from_json(const json& j, double cell_size = 0.25) {
    CostLedger ledger;
    for (const auto& rec : j.value("nav", json::array())) {
        NavRecord r;
        r.start_furniture = rec.value("start", "");
        r.dest_furniture = rec.at("dest").get<std::string>();
        r.cost = rec.at("cost").get<double>();
        for (const auto& xy : rec.value("path", json::array()))
            r.path.cells.push_back(Cell{xy.at(0).get<int>(), xy.at(1).get<int>()});
        r.path.length_m = path_length_m(r.path.cells, cell_size);
        ledger.nav_records.push_back(std::move(r));
    }
    for (const auto& rec : j.value("man", json::array())) {
        ManRecord r;
        const std::string kind = rec.at("kind").get<std::string>();
        r.kind = kind == "place" ? ActionKind::Place : ActionKind::Pickup;
        r.object = rec.at("object").get<std::string>();
        r.furniture = rec.at("furniture").get<std::string>();
        r.cost = rec.at("cost").get<double>();
        ledger.man_records.push_back(std::move(r));
    }
    return ledger;
}

}  // namespace tamp
