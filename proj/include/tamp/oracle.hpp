#pragma once

// Cost labels and the semantic similarity oracle that transfers known
// manipulation-cost labels to unseen (object, furniture) pairs. Two
// implementations: an offline rule oracle with a strictness knob, and an LLM
// oracle speaking a chat-completion wire protocol.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tamp/actions.hpp"
#include "tamp/scene_graph.hpp"

namespace tamp {

enum class CostLabel { Hard, Medium, Easy, Unknown };

inline std::string to_string(CostLabel label) {
    switch (label) {
        case CostLabel::Hard: return "hard";
        case CostLabel::Medium: return "medium";
        case CostLabel::Easy: return "easy";
        case CostLabel::Unknown: return "unknown";
    }
    return "unknown";
}

// f^en: numeric cost to textual label.
inline CostLabel encode_cost(double value) {
    if (value > 15.0) return CostLabel::Hard;
    if (value >= 5.0) return CostLabel::Medium;
    return CostLabel::Easy;
}

// f^de: textual label to numeric cost.
inline double decode_label(CostLabel label) {
    switch (label) {
        case CostLabel::Hard: return 20.0;
        case CostLabel::Medium: return 10.0;
        case CostLabel::Easy: return 5.0;
        case CostLabel::Unknown: return 0.0;
    }
    return 0.0;
}

struct ManQueryRecord {
    ActionKind kind = ActionKind::Pickup;
    std::string object;
    std::string furniture;
    SemanticAttributes object_attributes;
    SemanticAttributes furniture_attributes;
    CostLabel label = CostLabel::Unknown;
};

struct ManQuery {
    ActionKind kind = ActionKind::Pickup;
    std::string object;
    std::string furniture;
    SemanticAttributes object_attributes;
    SemanticAttributes furniture_attributes;
    std::vector<ManQueryRecord> records;
};

class SemanticOracle {
public:
    virtual ~SemanticOracle() = default;
    virtual CostLabel infer(const ManQuery& query) const = 0;
};

// Rule oracle. Transfer tiers by strictness sigma:
//   sigma >= 1.0          no transfer at all
//   sigma >  0.9          kind + furniture + category required
//   0.4 <= sigma <= 0.9   kind + furniture + (category or usage)
//   sigma <  0.4          kind alone suffices (loose reasoning)
// Among admissible records the best attribute match wins, first record on ties.
class RuleOracle : public SemanticOracle {
public:
    explicit RuleOracle(double strictness = 0.8) : strictness_(strictness) {}

    CostLabel infer(const ManQuery& query) const override {
        if (strictness_ >= 1.0) return CostLabel::Unknown;
        const ManQueryRecord* best = nullptr;
        int best_score = -1;
        for (const auto& rec : query.records) {
            if (rec.kind != query.kind) continue;
            bool furniture_match = rec.furniture == query.furniture;
            bool category_match = !query.object_attributes.category.empty() &&
                                  rec.object_attributes.category == query.object_attributes.category;
            bool usage_match = !query.object_attributes.usage.empty() &&
                               rec.object_attributes.usage == query.object_attributes.usage;
            bool admissible;
            if (strictness_ > 0.9)
                admissible = furniture_match && category_match;
            else if (strictness_ >= 0.4)
                admissible = furniture_match && (category_match || usage_match);
            else
                admissible = true;
            if (!admissible) continue;
            int score = (furniture_match ? 4 : 0) + (category_match ? 2 : 0) +
                        (usage_match ? 1 : 0);
            if (score > best_score) {
                best_score = score;
                best = &rec;
            }
        }
        return best ? best->label : CostLabel::Unknown;
    }

private:
    double strictness_;
};

// Response must contain exactly one vocabulary word; anything else is unknown.
inline CostLabel parse_label_response(const std::string& text) {
    static const std::pair<const char*, CostLabel> vocab[] = {
        {"hard", CostLabel::Hard},
        {"medium", CostLabel::Medium},
        {"easy", CostLabel::Easy},
        {"unknown", CostLabel::Unknown},
    };
    std::istringstream in(text);
    std::string word;
    CostLabel found = CostLabel::Unknown;
    int hits = 0;
    while (in >> word) {
        std::string lower;
        for (char c : word)
            if (std::isalpha(static_cast<unsigned char>(c)))
                lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        for (const auto& [name, label] : vocab)
            if (lower == name) {
                found = label;
                ++hits;
            }
    }
    return hits == 1 ? found : CostLabel::Unknown;
}

inline std::string format_attribute_bundle(const std::string& object,
                                           const SemanticAttributes& oa,
                                           const std::string& furniture,
                                           const SemanticAttributes& fa) {
    std::ostringstream out;
    out << object << " {location: " << oa.location << ", category: " << oa.category
        << ", usage: " << oa.usage << "} on " << furniture << " {location: " << fa.location
        << ", category: " << fa.category << ", usage: " << fa.usage << "}";
    return out.str();
}

inline std::string build_oracle_prompt(const ManQuery& query) {
    std::ostringstream out;
    out << "You estimate how costly a robot manipulation action is from semantic "
           "similarity with known actions.\n"
        << "Known action costs:\n";
    for (const auto& rec : query.records)
        out << "- " << to_string(rec.kind) << " "
            << format_attribute_bundle(rec.object, rec.object_attributes, rec.furniture,
                                       rec.furniture_attributes)
            << " -> " << to_string(rec.label) << "\n";
    out << "Query action: " << to_string(query.kind) << " "
        << format_attribute_bundle(query.object, query.object_attributes, query.furniture,
                                   query.furniture_attributes)
        << "\n"
        << "Answer with exactly one word from: hard, medium, easy, unknown. Answer "
           "unknown when no known action is semantically similar enough.\n";
    return out.str();
}

}  // namespace tamp
