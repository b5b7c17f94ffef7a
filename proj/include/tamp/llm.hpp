#pragma once

// JSON-over-HTTP chat-completion client plus the LLM-backed semantic oracle.
// Endpoint, key, and model come from LLM_ENDPOINT, LLM_API_KEY, LLM_MODEL.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tamp/oracle.hpp"

namespace tamp {

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LlmConfig {
    std::string endpoint;
    std::string api_key;
    std::string model;
    double temperature = 0.8;

    static LlmConfig from_env() {
        LlmConfig c;
        if (const char* e = std::getenv("LLM_ENDPOINT")) c.endpoint = e;
        if (const char* k = std::getenv("LLM_API_KEY")) c.api_key = k;
        if (const char* m = std::getenv("LLM_MODEL")) c.model = m;
        if (c.endpoint.empty() || c.model.empty())
            throw TransportError("LLM_ENDPOINT and LLM_MODEL must be set for the llm backend");
        return c;
    }
};

class ChatClient {
public:
    explicit ChatClient(LlmConfig config) : config_(std::move(config)) {}

    std::string complete(const std::string& system_text, const std::string& user_text) const {
        httplib::Client client(config_.endpoint);
        client.set_read_timeout(60, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        json body{{"model", config_.model},
                  {"temperature", config_.temperature},
                  {"messages",
                   json::array({json{{"role", "system"}, {"content", system_text}},
                                json{{"role", "user"}, {"content", user_text}}})}};
        auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
        if (!res || res->status != 200)
            throw TransportError("chat completion failed: " +
                                 (res ? std::to_string(res->status) : "no response"));
        try {
            json j = json::parse(res->body);
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw TransportError(std::string("malformed chat response: ") + e.what());
        }
    }

    const LlmConfig& config() const { return config_; }

private:
    LlmConfig config_;
};

// Transport failures surface as unknown with a logged warning so a flaky
// endpoint degrades estimates instead of aborting the mission.
class LlmOracle : public SemanticOracle {
public:
    explicit LlmOracle(LlmConfig config) : client_(std::move(config)) {}

    CostLabel infer(const ManQuery& query) const override {
        try {
            const std::string reply = client_.complete(
                "You are a semantic cost similarity function for a household robot.",
                build_oracle_prompt(query));
            return parse_label_response(reply);
        } catch (const TransportError& e) {
            std::cerr << "warning: semantic oracle transport failure: " << e.what() << "\n";
            return CostLabel::Unknown;
        }
    }

private:
    ChatClient client_;
};

}  // namespace tamp
