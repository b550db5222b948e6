#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radiosim/analysis.hpp"
#include "radiosim/engine.hpp"
#include "radiosim/wireline.hpp"

namespace radiosim {

/// Scenario load/validation error, with a path-like location of the offender.
struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct BoundQuery {
  Policy policy = Policy::Sis;
  int b = 1;
  Rational r{0};
  int h = 1;
  std::optional<int> d;  // default: longest simple path of the graph
};

struct ScenarioAnalysis {
  Rational slope_threshold{0};
  std::optional<BoundQuery> bounds;
  std::optional<int> certify_link_h;
  std::optional<int> certify_node_h;
  std::optional<std::pair<Rational, int>> admissibility;  // rate, burstiness
};

/// One scenario document: a radio execution or a wireline reference execution,
/// with its expected verdict and requested checks. Unknown keys are rejected.
struct Scenario {
  std::string name;
  std::string expect;  // "", "growth", "bounded", "blocked"
  bool is_wireline = false;
  ExecutionConfig config;  // radio scenarios
  WirelineConfig wire;     // wireline scenarios
  std::vector<int> checkpoints;
  ScenarioAnalysis analysis;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

struct CheckResult {
  std::string line;
  bool pass = true;
};

struct ScenarioRunResult {
  ExecutionTrace trace;
  std::string verdict;  // growth / bounded / blocked / none
  bool expectation_met = true;
  std::vector<CheckResult> checks;
  std::optional<BoundReport> bound_report;
  bool all_pass() const;
};

/// Runs a radio scenario and evaluates its declared checks. Admissibility is
/// checked against the realized injection log from the trace.
ScenarioRunResult run_scenario(const Scenario& scenario,
                               std::optional<std::uint64_t> seed_override = std::nullopt,
                               std::optional<int> horizon_override = std::nullopt);

struct TransformOutput {
  std::string radio_scenario_json;
  std::string manifest_json;
};

/// Applies the equivalence transform to a wireline scenario document,
/// producing a runnable radio scenario plus a comparison manifest.
TransformOutput transform_wireline_scenario(const Scenario& scenario);

}  // namespace radiosim
