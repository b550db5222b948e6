#include "radiosim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace radiosim {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : object.items())
    if (!allowed.count(key))
      throw ScenarioError("unknown key '" + key + "' in " + where);
}

const json& need(const json& object, const char* key, const std::string& where) {
  if (!object.contains(key)) throw ScenarioError("missing key '" + std::string(key) + "' in " + where);
  return object.at(key);
}

Rational rational_field(const json& value, const std::string& where) {
  try {
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_string()) return Rational::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  throw ScenarioError(where + ": expected integer or \"p/q\" string");
}

std::vector<std::pair<int, int>> pair_list(const json& value, const std::string& where) {
  std::vector<std::pair<int, int>> out;
  if (!value.is_array()) throw ScenarioError(where + ": expected an array of pairs");
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 2)
      throw ScenarioError(where + ": expected [a, b] pairs");
    out.emplace_back(item[0].get<int>(), item[1].get<int>());
  }
  return out;
}

NetworkGraph parse_graph(const json& doc) {
  reject_unknown_keys(doc, {"nodes", "edges"}, "graph");
  return NetworkGraph::from_edges(need(doc, "nodes", "graph").get<int>(),
                                  pair_list(need(doc, "edges", "graph"), "graph.edges"));
}

WirelineGraph parse_wireline_graph(const json& doc) {
  reject_unknown_keys(doc, {"nodes", "links"}, "wireline");
  return WirelineGraph::from_links(need(doc, "nodes", "wireline").get<int>(),
                                   pair_list(need(doc, "links", "wireline"), "wireline.links"));
}

TieConfig parse_tie(const json& doc) {
  reject_unknown_keys(doc, {"mode", "strategy", "rule", "choices"}, "protocol.tie");
  TieConfig tie;
  const std::string mode = need(doc, "mode", "protocol.tie").get<std::string>();
  if (mode == "arbitrary") {
    tie.mode = TieConfig::Mode::Arbitrary;
    const std::string strategy = need(doc, "strategy", "protocol.tie").get<std::string>();
    if (strategy == "seeded_random") tie.strategy = TieConfig::Strategy::SeededRandom;
    else if (strategy == "fixed_id") tie.strategy = TieConfig::Strategy::FixedId;
    else if (strategy == "scripted") tie.strategy = TieConfig::Strategy::Scripted;
    else throw ScenarioError("unknown tie strategy '" + strategy + "'");
    if (doc.contains("choices")) {
      for (const auto& choice : doc.at("choices")) {
        reject_unknown_keys(choice, {"round", "queue", "packet"}, "tie choice");
        tie.script.push_back({need(choice, "round", "tie choice").get<int>(),
                              need(choice, "queue", "tie choice").get<int>(),
                              need(choice, "packet", "tie choice").get<PacketId>()});
      }
    }
  } else if (mode == "permanent") {
    tie.mode = TieConfig::Mode::Permanent;
    const std::string rule =
        doc.contains("rule") ? doc.at("rule").get<std::string>() : std::string("fixed_id");
    if (rule == "fixed_id") tie.rule = TieConfig::PermanentRule::FixedId;
    else if (rule == "seeded_rank") tie.rule = TieConfig::PermanentRule::SeededRank;
    else throw ScenarioError("unknown permanent rule '" + rule + "'");
  } else {
    throw ScenarioError("unknown tie mode '" + mode + "'");
  }
  return tie;
}

OracleSchedule parse_oracle(const json& doc, const NetworkGraph& graph) {
  reject_unknown_keys(doc, {"mode", "rows", "period", "rounds", "h"}, "protocol.oracle");
  const std::string mode = need(doc, "mode", "protocol.oracle").get<std::string>();
  if (mode == "work_conserving") return OracleSchedule::work_conserving();
  if (mode == "round_robin") return OracleSchedule::round_robin();
  if (mode == "transmitter") {
    std::vector<std::string> rows;
    for (const auto& row : need(doc, "rows", "protocol.oracle"))
      rows.push_back(row.get<std::string>());
    return OracleSchedule::from_transmitter(TransmitterArray::from_rows(rows));
  }
  if (mode == "periodic_links")
    return make_periodic_link_oracle(graph, need(doc, "h", "protocol.oracle").get<int>());
  if (mode == "scripted") {
    const int period = need(doc, "period", "protocol.oracle").get<int>();
    std::vector<ScriptedRound> rounds(period);
    for (const auto& entry : need(doc, "rounds", "protocol.oracle")) {
      reject_unknown_keys(entry, {"round", "permitted", "up"}, "oracle round");
      const int index = need(entry, "round", "oracle round").get<int>();
      if (index < 0 || index >= period) throw ScenarioError("oracle round outside the period");
      ScriptedRound& r = rounds[index];
      const json& permitted = need(entry, "permitted", "oracle round");
      if (permitted.is_string() && permitted.get<std::string>() == "all") r.permit_all = true;
      else r.permitted = permitted.get<std::vector<int>>();
      r.up_links = pair_list(need(entry, "up", "oracle round"), "oracle round up");
    }
    return OracleSchedule::scripted(std::move(rounds));
  }
  throw ScenarioError("unknown oracle mode '" + mode + "'");
}

ScenarioAnalysis parse_analysis(const json& doc) {
  reject_unknown_keys(doc,
                      {"slope_threshold", "bounds", "certify_link_latency",
                       "certify_node_latency", "admissibility"},
                      "analysis");
  ScenarioAnalysis out;
  if (doc.contains("slope_threshold"))
    out.slope_threshold = rational_field(doc.at("slope_threshold"), "analysis.slope_threshold");
  if (doc.contains("bounds")) {
    const json& b = doc.at("bounds");
    reject_unknown_keys(b, {"policy", "b", "r", "h", "d"}, "analysis.bounds");
    BoundQuery query;
    query.policy = parse_policy(need(b, "policy", "analysis.bounds").get<std::string>());
    query.b = need(b, "b", "analysis.bounds").get<int>();
    query.r = rational_field(need(b, "r", "analysis.bounds"), "analysis.bounds.r");
    query.h = need(b, "h", "analysis.bounds").get<int>();
    if (b.contains("d")) query.d = b.at("d").get<int>();
    out.bounds = query;
  }
  if (doc.contains("certify_link_latency"))
    out.certify_link_h = doc.at("certify_link_latency").get<int>();
  if (doc.contains("certify_node_latency"))
    out.certify_node_h = doc.at("certify_node_latency").get<int>();
  if (doc.contains("admissibility")) {
    const json& a = doc.at("admissibility");
    reject_unknown_keys(a, {"rate", "burstiness"}, "analysis.admissibility");
    out.admissibility = {rational_field(need(a, "rate", "admissibility"), "admissibility.rate"),
                         need(a, "burstiness", "admissibility").get<int>()};
  }
  return out;
}

std::vector<int> parse_checkpoints(const json& run, int horizon) {
  std::vector<int> out;
  if (!run.contains("checkpoints")) return out;
  const json& c = run.at("checkpoints");
  if (c.is_array()) {
    out = c.get<std::vector<int>>();
  } else if (c.is_object()) {
    reject_unknown_keys(c, {"every"}, "run.checkpoints");
    const int every = need(c, "every", "run.checkpoints").get<int>();
    if (every < 1) throw ScenarioError("run.checkpoints.every must be positive");
    for (int round = every - 1; round < horizon; round += every) out.push_back(round);
  } else {
    throw ScenarioError("run.checkpoints must be a list or {\"every\": n}");
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("not valid JSON: ") + e.what());
  }
  reject_unknown_keys(doc, {"name", "expect", "graph", "wireline", "adversary", "protocol",
                            "run", "analysis"},
                      "scenario");

  Scenario scenario;
  scenario.name = doc.contains("name") ? doc.at("name").get<std::string>() : "unnamed";
  if (doc.contains("expect")) {
    scenario.expect = doc.at("expect").get<std::string>();
    static const std::set<std::string> kVerdicts{"growth", "bounded", "blocked", ""};
    if (!kVerdicts.count(scenario.expect))
      throw ScenarioError("expect must be growth, bounded or blocked");
  }

  const json& run = need(doc, "run", "scenario");
  reject_unknown_keys(run, {"horizon", "seed", "checkpoints"}, "run");
  const int horizon = need(run, "horizon", "run").get<int>();
  const std::uint64_t seed = run.contains("seed") ? run.at("seed").get<std::uint64_t>() : 0;

  if (doc.contains("analysis")) scenario.analysis = parse_analysis(doc.at("analysis"));

  const json& adversary = need(doc, "adversary", "scenario");
  reject_unknown_keys(adversary,
                      {"rate", "burstiness", "strategy", "injections", "periodic_injections",
                       "link_injections", "k", "iterations", "rounds", "paths", "max_per_round"},
                      "adversary");
  const std::string strategy = need(adversary, "strategy", "adversary").get<std::string>();

  // {"start": s, "every": e, "until": u, "path"/"links": [...]} expands to one
  // injection at s, s+e, ... below u
  auto expand_periodic = [&](const char* route_key, auto emit) {
    if (!adversary.contains("periodic_injections")) return;
    for (const auto& entry : adversary.at("periodic_injections")) {
      reject_unknown_keys(entry, {"start", "every", "until", route_key}, "periodic injection");
      const int start = need(entry, "start", "periodic injection").get<int>();
      const int every = need(entry, "every", "periodic injection").get<int>();
      const int until = need(entry, "until", "periodic injection").get<int>();
      if (every < 1) throw ScenarioError("periodic injection 'every' must be positive");
      const auto route =
          need(entry, route_key, "periodic injection").template get<std::vector<int>>();
      for (int t = start; t < until; t += every) emit(t, route);
    }
  };

  if (doc.contains("wireline")) {
    if (strategy != "scripted")
      throw ScenarioError("wireline scenarios support only the scripted strategy");
    scenario.is_wireline = true;
    scenario.wire.graph = parse_wireline_graph(doc.at("wireline"));
    if (adversary.contains("link_injections")) {
      for (const auto& injection : adversary.at("link_injections")) {
        reject_unknown_keys(injection, {"round", "links"}, "link injection");
        scenario.wire.injections.push_back(
            {need(injection, "round", "link injection").get<int>(),
             need(injection, "links", "link injection").get<std::vector<int>>()});
      }
    }
    expand_periodic("links", [&](int round, const std::vector<int>& links) {
      scenario.wire.injections.push_back({round, links});
    });
    if (scenario.wire.injections.empty())
      throw ScenarioError("wireline scenario has no injections");
    const json& protocol = need(doc, "protocol", "scenario");
    reject_unknown_keys(protocol, {"policy", "tie"}, "protocol");
    scenario.wire.policy = parse_policy(need(protocol, "policy", "protocol").get<std::string>());
    if (protocol.contains("tie")) scenario.wire.tie = parse_tie(protocol.at("tie"));
    scenario.wire.horizon = horizon;
    scenario.wire.seed = seed;
    scenario.checkpoints = parse_checkpoints(run, horizon);
    return scenario;
  }

  if (strategy == "sis_instability" || strategy == "tie_blocking") {
    if (doc.contains("graph"))
      throw ScenarioError("generator scenarios build their own graph; remove 'graph'");
    ScriptedScenario script;
    if (strategy == "sis_instability") {
      if (doc.contains("protocol"))
        throw ScenarioError("sis_instability fixes the whole protocol; remove 'protocol'");
      script = script_sis_reactive_instability(
          need(adversary, "k", "adversary").get<int>(),
          need(adversary, "iterations", "adversary").get<int>(),
          adversary.contains("burstiness") ? adversary.at("burstiness").get<int>() : 0);
    } else {
      script = script_tie_blocking(need(adversary, "rounds", "adversary").get<int>());
      if (doc.contains("protocol")) {
        const json& protocol = doc.at("protocol");
        reject_unknown_keys(protocol, {"policy", "tie"}, "protocol");
        if (protocol.contains("policy"))
          script.policy = parse_policy(protocol.at("policy").get<std::string>());
        if (protocol.contains("tie")) script.tie = parse_tie(protocol.at("tie"));
      }
    }
    scenario.checkpoints = parse_checkpoints(run, script.horizon);
    if (scenario.checkpoints.empty()) scenario.checkpoints = script.checkpoints;
    scenario.config = config_from_scripted_scenario(script);
    scenario.config.seed = seed;
    if (run.contains("horizon") && horizon != script.horizon)
      throw ScenarioError("generator scenarios fix the horizon at " +
                          std::to_string(script.horizon));
    return scenario;
  }

  ExecutionConfig& config = scenario.config;
  config.graph = parse_graph(need(doc, "graph", "scenario"));
  config.horizon = horizon;
  config.seed = seed;

  if (strategy == "scripted") {
    config.adversary.strategy = AdversarySpec::Strategy::Scripted;
    if (adversary.contains("injections")) {
      for (const auto& injection : adversary.at("injections")) {
        reject_unknown_keys(injection, {"round", "path"}, "injection");
        config.adversary.script.push_back(
            {need(injection, "round", "injection").get<int>(),
             need(injection, "path", "injection").get<std::vector<int>>()});
      }
    }
    expand_periodic("path", [&](int round, const std::vector<int>& path) {
      config.adversary.script.push_back({round, path});
    });
  } else if (strategy == "stochastic") {
    config.adversary.strategy = AdversarySpec::Strategy::Stochastic;
    config.adversary.rate = rational_field(need(adversary, "rate", "adversary"), "adversary.rate");
    config.adversary.burstiness = need(adversary, "burstiness", "adversary").get<int>();
    if (adversary.contains("paths"))
      for (const auto& path : adversary.at("paths"))
        config.adversary.path_pool.push_back(path.get<std::vector<int>>());
    if (adversary.contains("max_per_round"))
      config.adversary.attempts_per_round = adversary.at("max_per_round").get<int>();
  } else {
    throw ScenarioError("unknown adversary strategy '" + strategy + "'");
  }
  if (adversary.contains("rate") && strategy == "scripted")
    config.adversary.rate = rational_field(adversary.at("rate"), "adversary.rate");
  if (adversary.contains("burstiness"))
    config.adversary.burstiness = adversary.at("burstiness").get<int>();

  const json& protocol = need(doc, "protocol", "scenario");
  reject_unknown_keys(protocol, {"policy", "tie", "oracle", "hearing", "success"}, "protocol");
  config.policy = parse_policy(need(protocol, "policy", "protocol").get<std::string>());
  if (protocol.contains("tie")) config.tie = parse_tie(protocol.at("tie"));
  config.oracle = parse_oracle(need(protocol, "oracle", "protocol"), config.graph);
  config.hearing = parse_hearing_mode(need(protocol, "hearing", "protocol").get<std::string>());
  config.success = parse_success_model(need(protocol, "success", "protocol").get<std::string>());

  scenario.checkpoints = parse_checkpoints(run, horizon);
  return scenario;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  } catch (const std::exception& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

bool ScenarioRunResult::all_pass() const {
  if (!expectation_met) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ScenarioRunResult run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed_override,
                               std::optional<int> horizon_override) {
  if (scenario.is_wireline)
    throw ScenarioError("wireline scenarios are inputs to `transform`, not `run`");
  ExecutionConfig config = scenario.config;
  if (seed_override) config.seed = *seed_override;
  if (horizon_override) config.horizon = *horizon_override;

  ScenarioRunResult result;
  result.trace = run_execution(config);
  const ExecutionTrace& trace = result.trace;

  std::vector<int> checkpoints = scenario.checkpoints;
  for (int round : checkpoints)
    if (round >= config.horizon)
      throw ScenarioError("checkpoint beyond the horizon");
  if (checkpoints.size() < 3) {
    checkpoints.clear();
    const int step = std::max(1, config.horizon / 10);
    for (int round = step - 1; round < config.horizon; round += step)
      checkpoints.push_back(round);
  }

  const InstabilityReport stability =
      detect_instability(trace, checkpoints, scenario.analysis.slope_threshold);
  if (trace.total_delivered() == 0 && trace.max_q_total() > 0 &&
      stability.verdict != StabilityVerdict::Growth) {
    result.verdict = "blocked";
  } else {
    result.verdict = verdict_name(stability.verdict);
  }
  result.expectation_met = scenario.expect.empty() || result.verdict == scenario.expect;

  if (scenario.analysis.admissibility) {
    const auto& [rate, burstiness] = *scenario.analysis.admissibility;
    std::vector<InjectionEvent> events;
    for (const auto& p : trace.packets) events.push_back({p.injection_round, p.itinerary});
    const AdmissibilityReport report =
        check_admissibility(events, rate, burstiness, config.horizon, config.graph.node_count());
    std::string line = "admissibility rate=" + rate.to_string() +
                       " burstiness=" + std::to_string(burstiness) +
                       (report.pass ? " PASS" : " FAIL");
    if (!report.pass)
      line += " at interval [" + std::to_string(report.interval_start) + "," +
              std::to_string(report.interval_end) + "] node " + std::to_string(report.node);
    result.checks.push_back({line, report.pass});
  }
  if (scenario.analysis.bounds) {
    BoundQuery query = *scenario.analysis.bounds;
    const int d = query.d ? *query.d : longest_simple_path_length(config.graph);
    result.bound_report = check_bounds(trace, query.policy, query.b, query.r, query.h, d);
    result.checks.push_back({result.bound_report->to_line(), result.bound_report->pass()});
  }
  if (scenario.analysis.certify_link_h) {
    const LatencyVerdict v = certify_link_latency(trace, *scenario.analysis.certify_link_h);
    result.checks.push_back({"certify_link_latency h=" +
                                 std::to_string(*scenario.analysis.certify_link_h) +
                                 (v.pass ? " PASS" : " FAIL " + v.detail),
                             v.pass});
  }
  if (scenario.analysis.certify_node_h) {
    const LatencyVerdict v = certify_node_latency(trace, *scenario.analysis.certify_node_h);
    result.checks.push_back({"certify_node_latency h=" +
                                 std::to_string(*scenario.analysis.certify_node_h) +
                                 (v.pass ? " PASS" : " FAIL " + v.detail),
                             v.pass});
  }
  return result;
}

TransformOutput transform_wireline_scenario(const Scenario& scenario) {
  if (!scenario.is_wireline) throw ScenarioError("transform expects a wireline scenario");
  auto [graph, map] = equivalent_network(scenario.wire.graph);

  json radio;
  radio["name"] = scenario.name + "-equivalent";
  if (!scenario.expect.empty()) radio["expect"] = scenario.expect;
  radio["graph"]["nodes"] = graph.node_count();
  json edges = json::array();
  for (const auto& [u, w] : graph.edges()) edges.push_back(json::array({u, w}));
  radio["graph"]["edges"] = edges;

  json injections = json::array();
  for (const auto& injection : scenario.wire.injections) {
    const InjectionEvent event = transform_injection(map, injection);
    injections.push_back({{"round", event.round}, {"path", event.itinerary}});
  }
  radio["adversary"] = {{"strategy", "scripted"}, {"injections", injections}};

  json tie;
  if (scenario.wire.tie.mode == TieConfig::Mode::Permanent) {
    tie = {{"mode", "permanent"},
           {"rule", scenario.wire.tie.rule == TieConfig::PermanentRule::FixedId ? "fixed_id"
                                                                                : "seeded_rank"}};
  } else {
    const char* strategy =
        scenario.wire.tie.strategy == TieConfig::Strategy::FixedId ? "fixed_id" : "seeded_random";
    tie = {{"mode", "arbitrary"}, {"strategy", strategy}};
  }
  radio["protocol"] = {{"policy", policy_name(scenario.wire.policy)},
                       {"tie", tie},
                       {"oracle", {{"mode", "work_conserving"}}},
                       {"hearing", "reactive"},
                       {"success", "interference_free"}};
  radio["run"] = {{"horizon", scenario.wire.horizon}, {"seed", scenario.wire.seed}};

  json manifest;
  manifest["scenario"] = scenario.name;
  json link_to_node = json::array();
  for (std::size_t i = 0; i < map.links.size(); ++i)
    link_to_node.push_back({{"link", json::array({map.links[i].first, map.links[i].second})},
                            {"node", static_cast<int>(i)},
                            {"absorb", map.absorb_node[i]}});
  manifest["link_to_node"] = link_to_node;

  return {radio.dump(2) + "\n", manifest.dump(2) + "\n"};
}

}  // namespace radiosim
