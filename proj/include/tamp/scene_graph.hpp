#pragma once

// Semantic scene graph: rooms, furniture, objects with containment edges
// (object on furniture, furniture in room) and free-text attributes.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tamp {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SemanticAttributes {
    std::string location;
    std::string category;
    std::string usage;

    bool operator==(const SemanticAttributes&) const = default;
};

struct RoomNode {
    std::string name;
    SemanticAttributes attributes;
};

struct FurnitureNode {
    std::string name;
    std::string room;
    SemanticAttributes attributes;
};

struct ObjectNode {
    std::string name;
    std::string on_furniture;
    SemanticAttributes attributes;
};

class SceneGraph {
public:
    std::vector<RoomNode> rooms;
    std::vector<FurnitureNode> furniture;
    std::vector<ObjectNode> objects;

    const RoomNode* find_room(const std::string& name) const {
        for (const auto& r : rooms)
            if (r.name == name) return &r;
        return nullptr;
    }
    const FurnitureNode* find_furniture(const std::string& name) const {
        for (const auto& f : furniture)
            if (f.name == name) return &f;
        return nullptr;
    }
    const ObjectNode* find_object(const std::string& name) const {
        for (const auto& o : objects)
            if (o.name == name) return &o;
        return nullptr;
    }
    ObjectNode* find_object(const std::string& name) {
        for (auto& o : objects)
            if (o.name == name) return &o;
        return nullptr;
    }

    // Containment closure plus name uniqueness. Throws ParseError naming the
    // offending node.
    void validate() const {
        std::map<std::string, int> seen;
        for (const auto& r : rooms) {
            if (r.name.empty()) throw ParseError("room with empty name");
            seen[r.name]++;
        }
        for (const auto& f : furniture) seen[f.name]++;
        for (const auto& o : objects) seen[o.name]++;
        for (const auto& [name, count] : seen)
            if (count > 1) throw ParseError("duplicate node name: " + name);
        for (const auto& f : furniture) {
            if (!find_room(f.room))
                throw ParseError("furniture " + f.name + " references missing room " + f.room);
            if (f.attributes.category.empty() || f.attributes.usage.empty())
                throw ParseError("furniture " + f.name + " must fill category and usage");
        }
        for (const auto& o : objects) {
            if (!find_furniture(o.on_furniture))
                throw ParseError("object " + o.name + " references missing furniture " +
                                 o.on_furniture);
            if (o.attributes.category.empty() || o.attributes.usage.empty())
                throw ParseError("object " + o.name + " must fill category and usage");
        }
    }
};

inline SemanticAttributes attributes_from_json(const json& j) {
    SemanticAttributes a;
    a.location = j.value("location", "");
    a.category = j.value("category", "");
    a.usage = j.value("usage", "");
    return a;
}

inline json attributes_to_json(const SemanticAttributes& a) {
    return json{{"location", a.location}, {"category", a.category}, {"usage", a.usage}};
}

inline SceneGraph load_scene_graph(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene graph parse error: ") + e.what());
    }
    SceneGraph g;
    for (const auto& r : j.value("rooms", json::array())) {
        RoomNode node;
        node.name = r.at("name").get<std::string>();
        if (r.contains("attributes")) node.attributes = attributes_from_json(r["attributes"]);
        g.rooms.push_back(std::move(node));
    }
    for (const auto& f : j.value("furniture", json::array())) {
        FurnitureNode node;
        node.name = f.at("name").get<std::string>();
        node.room = f.at("room").get<std::string>();
        if (f.contains("attributes")) node.attributes = attributes_from_json(f["attributes"]);
        g.furniture.push_back(std::move(node));
    }
    for (const auto& o : j.value("objects", json::array())) {
        ObjectNode node;
        node.name = o.at("name").get<std::string>();
        node.on_furniture = o.at("on_furniture").get<std::string>();
        if (o.contains("attributes")) node.attributes = attributes_from_json(o["attributes"]);
        g.objects.push_back(std::move(node));
    }
    g.validate();
    return g;
}

// Canonical form: nlohmann::json orders keys alphabetically, so one
// load/serialize round trip is a fixed point byte for byte.
inline std::string serialize_scene_graph(const SceneGraph& g) {
    json j;
    j["rooms"] = json::array();
    for (const auto& r : g.rooms)
        j["rooms"].push_back(json{{"name", r.name}, {"attributes", attributes_to_json(r.attributes)}});
    j["furniture"] = json::array();
    for (const auto& f : g.furniture)
        j["furniture"].push_back(json{{"name", f.name},
                                      {"room", f.room},
                                      {"attributes", attributes_to_json(f.attributes)}});
    j["objects"] = json::array();
    for (const auto& o : g.objects)
        j["objects"].push_back(json{{"name", o.name},
                                    {"on_furniture", o.on_furniture},
                                    {"attributes", attributes_to_json(o.attributes)}});
    return j.dump(2) + "\n";
}

}  // namespace tamp
