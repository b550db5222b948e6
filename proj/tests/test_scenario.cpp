#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "radiosim/scenario.hpp"

using namespace radiosim;

namespace {

const char* kMinimal = R"({
  "name": "minimal",
  "graph": {"nodes": 2, "edges": [[0, 1]]},
  "adversary": {"strategy": "scripted", "injections": [{"round": 0, "path": [0, 1]}]},
  "protocol": {"policy": "SIS", "oracle": {"mode": "work_conserving"},
               "hearing": "reactive", "success": "radio_collision"},
  "run": {"horizon": 20, "seed": 1}
})";

std::string scenario_dir() { return std::string(RADIOSIM_SOURCE_DIR) + "/scenarios/"; }

}  // anonymous namespace

TEST_CASE("a minimal scenario parses and runs") {
  const Scenario scenario = parse_scenario(kMinimal);
  CHECK(scenario.name == "minimal");
  const auto result = run_scenario(scenario);
  CHECK(result.trace.total_delivered() == 1);
  CHECK(result.all_pass());
}

TEST_CASE("unknown keys are rejected with their location") {
  std::string bad = kMinimal;
  bad.replace(bad.find("\"name\""), 6, "\"nome\"");
  CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
  try {
    parse_scenario(bad);
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("nome") != std::string::npos);
  }
}

TEST_CASE("malformed JSON and missing sections are scenario errors") {
  CHECK_THROWS_AS(parse_scenario("{ not json"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("{}"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(R"({"run": {"horizon": 5}})"), ScenarioError);
}

TEST_CASE("expect must be a known verdict") {
  std::string bad = kMinimal;
  bad.insert(bad.find("\"graph\""), "\"expect\": \"sideways\",\n  ");
  CHECK_THROWS_AS(parse_scenario(bad), ScenarioError);
}

TEST_CASE("periodic injections expand to the stated rounds") {
  const char* doc = R"({
    "graph": {"nodes": 2, "edges": [[0, 1]]},
    "adversary": {"strategy": "scripted",
                  "periodic_injections": [{"start": 2, "every": 5, "until": 17, "path": [0, 1]}]},
    "protocol": {"policy": "FIFO", "oracle": {"mode": "work_conserving"},
                 "hearing": "reactive", "success": "radio_collision"},
    "run": {"horizon": 20}
  })";
  const Scenario scenario = parse_scenario(doc);
  REQUIRE(scenario.config.adversary.script.size() == 3);
  CHECK(scenario.config.adversary.script[0].round == 2);
  CHECK(scenario.config.adversary.script[2].round == 12);
}

TEST_CASE("checkpoints accept a list or an every-step") {
  const char* doc = R"({
    "graph": {"nodes": 2, "edges": [[0, 1]]},
    "adversary": {"strategy": "scripted", "injections": []},
    "protocol": {"policy": "FIFO", "oracle": {"mode": "work_conserving"},
                 "hearing": "reactive", "success": "radio_collision"},
    "run": {"horizon": 30, "checkpoints": {"every": 10}}
  })";
  const Scenario scenario = parse_scenario(doc);
  CHECK(scenario.checkpoints == std::vector<int>{9, 19, 29});
}

TEST_CASE("generator scenarios fix their own protocol") {
  const char* doc = R"({
    "adversary": {"strategy": "sis_instability", "k": 4, "iterations": 2, "burstiness": 4},
    "run": {"horizon": 128}
  })";
  const Scenario scenario = parse_scenario(doc);
  CHECK(scenario.config.policy == Policy::Sis);
  CHECK(scenario.config.horizon == 128);
  const char* with_graph = R"({
    "graph": {"nodes": 3, "edges": [[0, 1], [0, 2]]},
    "adversary": {"strategy": "sis_instability", "k": 4, "iterations": 2},
    "run": {"horizon": 128}
  })";
  CHECK_THROWS_AS(parse_scenario(with_graph), ScenarioError);
}

TEST_CASE("bundled scenarios load, run and meet their declared expectations") {
  for (const char* name :
       {"sis-reactive-instability-k4", "tie-blocking", "tie-blocking-permanent",
        "sis-proactive-bounds", "lis-proactive-bounds", "lis-reactive-permanent"}) {
    const Scenario scenario = load_scenario_file(scenario_dir() + name + ".json");
    const auto result = run_scenario(scenario);
    INFO(name);
    CHECK(result.all_pass());
  }
}

TEST_CASE("wireline scenarios transform into runnable radio scenarios") {
  const Scenario wireline = load_scenario_file(scenario_dir() + "wireline-fifo-chain.json");
  REQUIRE(wireline.is_wireline);
  CHECK_THROWS_AS(run_scenario(wireline), ScenarioError);
  const TransformOutput output = transform_wireline_scenario(wireline);
  const Scenario radio = parse_scenario(output.radio_scenario_json);
  CHECK(radio.config.oracle.mode == OracleSchedule::Mode::WorkConserving);
  CHECK(radio.config.success == SuccessModel::InterferenceFree);
  const auto result = run_scenario(radio);
  CHECK(result.verdict == "bounded");
}

TEST_CASE("metrics CSV has the documented column layout") {
  const Scenario scenario = parse_scenario(kMinimal);
  const auto result = run_scenario(scenario);
  std::ostringstream csv;
  result.trace.write_metrics_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("round,Q_total,q0,q1\n", 0) == 0);
}
