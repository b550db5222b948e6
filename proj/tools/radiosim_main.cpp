#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "radiosim/analysis.hpp"
#include "radiosim/oracle.hpp"
#include "radiosim/scenario.hpp"

namespace fs = std::filesystem;
using namespace radiosim;

namespace {

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, std::optional<int> horizon) {
  Scenario scenario;
  try {
    scenario = load_scenario_file(scenario_path);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  }

  ScenarioRunResult result;
  try {
    result = run_scenario(scenario, seed, horizon);
  } catch (const std::exception& e) {
    std::cerr << "run error: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(out_dir);
  {
    std::ofstream trace_out(fs::path(out_dir) / "trace.jsonl");
    result.trace.write_jsonl(trace_out);
  }
  {
    std::ofstream metrics_out(fs::path(out_dir) / "metrics.csv");
    result.trace.write_metrics_csv(metrics_out);
  }

  std::ofstream report(fs::path(out_dir) / "report.txt");
  auto emit = [&](const std::string& line) {
    std::cout << line << "\n";
    report << line << "\n";
  };
  emit("scenario " + scenario.name);
  emit("verdict " + result.verdict +
       (scenario.expect.empty()
            ? ""
            : " expected " + scenario.expect + (result.expectation_met ? " OK" : " MISMATCH")));
  emit("delivered " + std::to_string(result.trace.total_delivered()) + " max_Q " +
       std::to_string(result.trace.max_q_total()) + " max_queue " +
       std::to_string(result.trace.max_queue_size()));
  for (const auto& check : result.checks) emit(check.line);

  if (result.bound_report) {
    std::ofstream bounds_csv(fs::path(out_dir) / "bounds.csv");
    const BoundReport& b = *result.bound_report;
    bounds_csv << "scenario,policy,mode,h,r,b,d,queue_bound,observed_max,verdict\n";
    bounds_csv << scenario.name << ',' << policy_name(b.policy) << ','
               << hearing_mode_name(scenario.config.hearing) << ',' << b.h << ','
               << b.r.to_string() << ',' << b.b << ',' << b.d << ','
               << b.queue_bound.to_string() << ',' << b.observed_max_queue << ','
               << (b.pass() ? "PASS" : "FAIL") << '\n';
  }
  return result.all_pass() ? 0 : 1;
}

int cmd_transform(const std::string& scenario_path, const std::string& out_path,
                  const std::string& manifest_path) {
  try {
    const Scenario scenario = load_scenario_file(scenario_path);
    const TransformOutput output = transform_wireline_scenario(scenario);
    if (out_path.empty()) {
      std::cout << output.radio_scenario_json;
    } else {
      std::ofstream out(out_path);
      out << output.radio_scenario_json;
    }
    if (!manifest_path.empty()) {
      std::ofstream out(manifest_path);
      out << output.manifest_json;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "transform error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify_transmitter(const std::string& array_path) {
  std::ifstream in(array_path);
  if (!in.is_open()) {
    std::cerr << "cannot open " << array_path << "\n";
    return 2;
  }
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  try {
    const TransmitterVerdict verdict = verify_transmitter(TransmitterArray::from_rows(rows));
    if (verdict.pass) {
      std::cout << "PASS\n";
      for (std::size_t r = 0; r < verdict.witness_columns.size(); ++r)
        std::cout << "row " << r << " isolated at column " << verdict.witness_columns[r] << "\n";
      return 0;
    }
    std::cout << "FAIL row " << verdict.first_failing_row << " has no isolated column\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "verify error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_bounds(const std::string& policy_name_arg, int b, const std::string& r_text, int h, int d) {
  try {
    const Policy policy = parse_policy(policy_name_arg);
    const Rational r = Rational::parse(r_text);
    std::cout << "policy " << policy_name(policy) << "  b=" << b << "  r=" << r.to_string()
              << "  h=" << h << "  d=" << d << "\n";
    if (policy == Policy::Sis) {
      const SisBounds bounds = sis_bounds(b, r, h, d);
      for (int i = 0; i < d; ++i)
        std::cout << "  k_" << i + 1 << " = " << bounds.k[i].to_string() << " ("
                  << bounds.k[i].to_double() << ")\n";
      std::cout << "  queue_bound = " << bounds.queue_bound.to_string() << " ("
                << bounds.queue_bound.to_double() << ")\n";
      std::cout << "  delay_bound = " << bounds.delay_bound.to_string() << " ("
                << bounds.delay_bound.to_double() << ")\n";
    } else if (policy == Policy::Lis) {
      const LisBounds bounds = lis_bounds(b, r, h, d);
      std::cout << "  queue_bound = " << bounds.queue_bound.to_string() << " ("
                << bounds.queue_bound.to_double() << "), integer bound "
                << bounds.queue_bound_floor << "\n";
      std::cout << "  delay_bound = " << bounds.delay_bound.to_string() << " ("
                << bounds.delay_bound.to_double() << ")\n";
    } else {
      std::cerr << "bounds are defined for SIS and LIS\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "bounds error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radiosim: adversarial packet routing simulator for multi-hop radio networks"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the latency flag
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", out_path, manifest_path, array_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
  std::string policy = "sis", rate = "0";
  int b = 1, h = 1, d = 1;

  CLI::App* run = app.add_subcommand("run", "run a scenario and write trace, metrics and report");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--horizon", horizon, "override the horizon");

  CLI::App* transform =
      app.add_subcommand("transform", "wireline scenario -> equivalent radio scenario");
  transform->add_option("scenario", scenario_path, "wireline scenario JSON file")->required();
  transform->add_option("--out", out_path, "radio scenario output file (default stdout)");
  transform->add_option("--manifest", manifest_path, "comparison manifest output file");

  CLI::App* verify = app.add_subcommand("verify-transmitter", "check the isolation property");
  verify->add_option("array", array_path, "file with rows of 0/1 characters")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "print closed-form queue/delay bounds");
  bounds->add_option("--policy", policy, "sis or lis")->required();
  bounds->add_option("--b", b, "burstiness")->required();
  bounds->add_option("--r", rate, "rate, integer or p/q")->required();
  bounds->add_option("--h", h, "hearing latency")->required();
  bounds->add_option("--d", d, "longest simple path length")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, out_dir, seed, horizon);
  if (transform->parsed()) return cmd_transform(scenario_path, out_path, manifest_path);
  if (verify->parsed()) return cmd_verify_transmitter(array_path);
  if (bounds->parsed()) {
    std::string upper = policy;
    for (char& c : upper) c = static_cast<char>(std::toupper(c));
    return cmd_bounds(upper, b, rate, h, d);
  }
  return 2;
}
