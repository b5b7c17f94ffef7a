#include <catch_amalgamated.hpp>

#include "support/scenario.hpp"
#include "tamp/llm.hpp"
#include "tamp/llm_backend.hpp"
#include "tamp/tamp.hpp"

using namespace tamp;
using namespace tamp::testsupport;

TEST_CASE("planner prompt carries command, scene, docs and feedback", "[prompt]") {
    SceneGraph g = small_scene();
    PlanningContext ctx;
    ctx.command.text = "bring the cup to the desk";
    ctx.command.goal = {{"cup", "desk_1"}};
    ctx.graph = &g;
    ctx.m_candidates = 3;
    ctx.ledger_summary = "(cup_1, counter_1, hard)\n";
    ctx.feedback = {{2, ViolationRule::ObjectNotHeld, "cup_1"}};

    std::string prompt = build_planner_prompt(ctx);
    CHECK(prompt.find("bring the cup to the desk") != std::string::npos);
    CHECK(prompt.find("\"counter_1\"") != std::string::npos);
    CHECK(prompt.find("navigate(furniture, room)") != std::string::npos);
    CHECK(prompt.find("(cup_1, counter_1, hard)") != std::string::npos);
    CHECK(prompt.find("object-not-held") != std::string::npos);
    CHECK(prompt.find("Emit exactly 3") != std::string::npos);
}

TEST_CASE("prompt omits empty ledger and feedback sections", "[prompt]") {
    SceneGraph g = small_scene();
    PlanningContext ctx;
    ctx.command.text = "noop";
    ctx.graph = &g;
    std::string prompt = build_planner_prompt(ctx);
    CHECK(prompt.find("Known action costs") == std::string::npos);
    CHECK(prompt.find("infeasible") == std::string::npos);
}

TEST_CASE("oracle prompt lists records and vocabulary", "[prompt]") {
    ManQuery q;
    q.kind = ActionKind::Pickup;
    q.object = "remote_control";
    q.furniture = "table_3";
    q.object_attributes = {"table", "electronics", "entertainment"};
    ManQueryRecord rec;
    rec.kind = ActionKind::Pickup;
    rec.object = "phone";
    rec.furniture = "table_3";
    rec.object_attributes = {"table", "electronics", "communication"};
    rec.label = CostLabel::Easy;
    q.records.push_back(rec);
    std::string prompt = build_oracle_prompt(q);
    CHECK(prompt.find("remote_control") != std::string::npos);
    CHECK(prompt.find("-> easy") != std::string::npos);
    CHECK(prompt.find("hard, medium, easy, unknown") != std::string::npos);
}

TEST_CASE("plans response parses a clean JSON array", "[parse]") {
    const std::string reply = R"([
        [["navigate", "counter_1", "kitchen"],
         ["pickup", "cup_1", "counter_1"],
         ["navigate", "desk_1", "office"],
         ["place", "cup_1", "desk_1"]],
        [["navigate", "table_1", "kitchen"],
         ["pickup", "cup_2", "table_1"]]
    ])";
    std::vector<TaskPlan> plans = parse_plans_response(reply);
    REQUIRE(plans.size() == 2);
    REQUIRE(plans[0].actions.size() == 4);
    CHECK(plans[0].actions[0] == HighLevelAction::navigate("counter_1", "kitchen"));
    CHECK(plans[0].actions[3] == HighLevelAction::place("cup_1", "desk_1"));
    CHECK(plans[1].actions.size() == 2);
}

TEST_CASE("plans response tolerates surrounding prose", "[parse]") {
    const std::string reply =
        "Sure! Here are the plans you asked for:\n"
        "[[[\"navigate\", \"desk_1\", \"office\"], [\"pickup\", \"phone_1\", \"desk_1\"]]]\n"
        "Let me know if you need anything else.";
    std::vector<TaskPlan> plans = parse_plans_response(reply);
    REQUIRE(plans.size() == 1);
    CHECK(plans[0].actions[1] == HighLevelAction::pickup("phone_1", "desk_1"));
}

TEST_CASE("malformed plans responses are rejected", "[parse]") {
    CHECK_THROWS_AS(parse_plans_response("I cannot help with that."), ParseError);
    CHECK_THROWS_AS(parse_plans_response("[[[\"navigate\", \"a\"]]]"), ParseError);
    CHECK_THROWS_AS(parse_plans_response("[[[\"teleport\", \"a\", \"b\"]]]"), ParseError);
    CHECK_THROWS_AS(parse_plans_response("] backwards ["), ParseError);
}

TEST_CASE("llm config requires endpoint and model", "[config]") {
#ifdef _WIN32
    SUCCEED("environment manipulation skipped");
#else
    unsetenv("LLM_ENDPOINT");
    unsetenv("LLM_MODEL");
    CHECK_THROWS_AS(LlmConfig::from_env(), TransportError);
    setenv("LLM_ENDPOINT", "http://localhost:9", 1);
    setenv("LLM_MODEL", "test-model", 1);
    LlmConfig c = LlmConfig::from_env();
    CHECK(c.endpoint == "http://localhost:9");
    CHECK(c.model == "test-model");
    unsetenv("LLM_ENDPOINT");
    unsetenv("LLM_MODEL");
#endif
}

TEST_CASE("unreachable endpoint degrades the oracle to unknown", "[transport]") {
    LlmConfig c;
    c.endpoint = "http://127.0.0.1:9";  // discard port, nothing listens
    c.model = "test-model";
    LlmOracle oracle(c);
    ManQuery q;
    q.kind = ActionKind::Pickup;
    q.object = "cup_1";
    q.furniture = "counter_1";
    CHECK(oracle.infer(q) == CostLabel::Unknown);
}

TEST_CASE("unreachable endpoint fails candidate generation loudly", "[transport]") {
    SceneGraph g = small_scene();
    LlmConfig c;
    c.endpoint = "http://127.0.0.1:9";
    c.model = "test-model";
    LlmBackend backend(c);
    PlanningContext ctx;
    ctx.command.text = "noop";
    ctx.graph = &g;
    CHECK_THROWS_AS(backend.generate(ctx), TransportError);
}
