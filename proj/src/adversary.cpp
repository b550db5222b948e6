#include "radiosim/adversary.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace radiosim {

namespace {
constexpr int kExhaustiveHorizonCap = 2000;
}

AdmissibilityReport check_admissibility(const std::vector<InjectionEvent>& events,
                                        const Rational& rate, int burstiness, int horizon,
                                        int node_count) {
  AdmissibilityReport report;
  if (events.empty()) return report;

  std::vector<std::vector<int>> rounds_by_node(node_count);  // ascending per node
  int max_round = 0;
  for (const auto& e : events) {
    max_round = std::max(max_round, e.round);
    std::set<int> distinct(e.itinerary.begin(), e.itinerary.end());
    for (int v : distinct) {
      if (v < 0 || v >= node_count) throw std::invalid_argument("injection node out of range");
      rounds_by_node[v].push_back(e.round);
    }
  }
  if (max_round > horizon) throw std::invalid_argument("event beyond horizon");
  for (auto& rounds : rounds_by_node) std::sort(rounds.begin(), rounds.end());

  // integer form of count > rate * length + burstiness, exact
  const long long rate_num = rate.num();
  const long long rate_den = rate.den();
  auto violates = [&](long long count, long long length) {
    return count * rate_den > rate_num * length + static_cast<long long>(burstiness) * rate_den;
  };

  if (horizon <= kExhaustiveHorizonCap) {
    // prefix[v][t] = packets through v injected in rounds [0, t-1]
    std::vector<std::vector<int>> prefix(node_count, std::vector<int>(horizon + 2, 0));
    for (int v = 0; v < node_count; ++v) {
      auto& p = prefix[v];
      for (int r : rounds_by_node[v]) ++p[r + 1];
      for (int t = 1; t <= horizon + 1; ++t) p[t] += p[t - 1];
    }
    // first violation in detection order: smallest interval end, then the
    // tightest window (largest start), then node
    for (int b = 0; b <= horizon; ++b) {
      for (int a = b; a >= 0; --a) {
        for (int v = 0; v < node_count; ++v) {
          const long long count = prefix[v][b + 1] - prefix[v][a];
          if (violates(count, b - a + 1)) {
            report.pass = false;
            report.interval_start = a;
            report.interval_end = b;
            report.node = v;
            report.count = count;
            report.bound = rate * Rational(b - a + 1) + Rational(burstiness);
            return report;
          }
        }
      }
    }
    return report;
  }

  // Exact for the verdict: a violating interval shrinks to one aligned with
  // injection rounds at both ends, with the same count and a smaller length.
  report.exhaustive = false;
  for (int v = 0; v < node_count; ++v) {
    const auto& rounds = rounds_by_node[v];
    for (std::size_t j = 0; j < rounds.size(); ++j) {
      for (std::size_t i = j + 1; i-- > 0;) {
        const long long count = static_cast<long long>(j - i + 1);
        const int length = rounds[j] - rounds[i] + 1;
        if (!violates(count, length)) continue;
        const bool better = report.pass || rounds[j] < report.interval_end ||
                            (rounds[j] == report.interval_end && rounds[i] > report.interval_start);
        if (better) {
          report.pass = false;
          report.interval_start = rounds[i];
          report.interval_end = rounds[j];
          report.node = v;
          report.count = count;
          report.bound = rate * Rational(length) + Rational(burstiness);
        }
        break;
      }
      if (!report.pass && rounds[j] >= report.interval_end) break;
    }
  }
  return report;
}

std::vector<std::vector<int>> enumerate_simple_paths(const NetworkGraph& graph, int max_paths) {
  std::vector<std::vector<int>> paths;
  std::vector<int> current;
  std::vector<bool> visited(graph.node_count(), false);
  std::function<void(int)> dfs = [&](int node) {
    if (static_cast<int>(paths.size()) >= max_paths) return;
    if (current.size() >= 2) paths.push_back(current);
    for (int next : graph.neighbors(node)) {
      if (visited[next]) continue;
      visited[next] = true;
      current.push_back(next);
      dfs(next);
      current.pop_back();
      visited[next] = false;
    }
  };
  for (int start = 0; start < graph.node_count() && static_cast<int>(paths.size()) < max_paths;
       ++start) {
    visited[start] = true;
    current = {start};
    dfs(start);
    visited[start] = false;
  }
  std::stable_sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return paths;
}

TokenBucketInjector::TokenBucketInjector(const NetworkGraph& graph, const AdversarySpec& spec,
                                         std::uint64_t seed)
    : graph_(graph), spec_(spec), seed_(seed) {
  if (spec_.rate < Rational(0) || spec_.rate > Rational(1))
    throw std::invalid_argument("rate must be in [0,1]");
  if (spec_.burstiness < 1) throw std::invalid_argument("burstiness must be positive");
  tokens_.assign(graph.node_count(), Rational(spec_.burstiness));
  pool_ = spec_.path_pool.empty() ? enumerate_simple_paths(graph, 256) : spec_.path_pool;
  for (const auto& path : pool_)
    if (!validate_itinerary(graph, path) || path.size() < 2)
      throw std::invalid_argument("invalid itinerary in path pool");
}

std::vector<InjectionEvent> TokenBucketInjector::events_for_round(int round) {
  if (round != next_round_) throw std::logic_error("injector rounds must advance in order");
  ++next_round_;

  const Rational cap(spec_.burstiness);
  for (auto& t : tokens_) {
    t = t + spec_.rate;
    if (t > cap) t = cap;
  }

  std::vector<InjectionEvent> events;
  if (pool_.empty()) return events;
  for (int attempt = 0; attempt < spec_.attempts_per_round; ++attempt) {
    const std::uint64_t roll =
        mix64(seed_ ^ mix64(static_cast<std::uint64_t>(round) * 2654435761ULL + attempt));
    const auto& path = pool_[roll % pool_.size()];
    std::set<int> distinct(path.begin(), path.end());
    bool ok = true;
    for (int v : distinct)
      if (tokens_[v] < Rational(1)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int v : distinct) tokens_[v] = tokens_[v] - Rational(1);
    events.push_back({round, path});
  }
  return events;
}

ScriptedScenario script_sis_reactive_instability(int k, int iterations, int burstiness) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (iterations < 1) throw std::invalid_argument("iterations must be positive");
  int b = burstiness == 0 ? k + (k % 2) : burstiness;
  if (b < 2 || b % 2 != 0)
    throw std::invalid_argument("burstiness must be even and at least 2");

  ScriptedScenario out;
  out.graph = NetworkGraph::star(3);  // center 0, leaves 1 (v) and 2 (u)
  const int center = 0, leaf_v = 1, leaf_u = 2;
  const int spacing = k + 1;
  const int period = b * (3 * k + 4);
  const int last_injection = 1 + spacing * (2 * b - 1);

  std::vector<ScriptedRound> rounds(period);
  for (auto& r : rounds) r.permit_all = true;
  auto up_v = [&](int offset) { rounds[offset % period].up_links.emplace_back(center, leaf_v); };
  auto up_u = [&](int offset) { rounds[offset % period].up_links.emplace_back(center, leaf_u); };

  // Phase 1. Injection j at offset 1 + spacing*j targets v (even j) or u
  // (odd j). Its "newest" window is the spacing rounds after it becomes
  // transmittable; the opposite link is brought up twice inside each window.
  up_v(1);  // shielded by the previous iteration's newest leftover (a u-packet)
  for (int j = 0; j < 2 * b; ++j) {
    const int offset = 1 + spacing * j;
    const bool to_v = j % 2 == 0;
    if (to_v) {
      up_u(offset + 1);
      up_u(offset + k + 1);
    } else {
      up_v(offset + 1);
      up_v(offset + k + 1);
    }
  }
  // Phase 2: both links up together, b times, spaced k+2.
  for (int i = 1; i <= b; ++i) {
    up_v(last_injection + (k + 2) * i);
    up_u(last_injection + (k + 2) * i);
  }
  out.oracle = OracleSchedule::scripted(std::move(rounds));
  out.oracle.claimed_latency = k + 2;

  for (int m = 0; m < iterations; ++m) {
    const int base = m * period;
    for (int j = 0; j < 2 * b; ++j) {
      const int target = j % 2 == 0 ? leaf_v : leaf_u;
      out.injections.push_back({base + 1 + spacing * j, {center, target}});
    }
    out.checkpoints.push_back(base + period - 1);
  }

  out.policy = Policy::Sis;
  out.tie.mode = TieConfig::Mode::Arbitrary;
  out.tie.strategy = TieConfig::Strategy::FixedId;  // no ties arise: classes are distinct
  out.horizon = iterations * period;
  out.burstiness = b;
  // 2b packets per period; admissible at 1/(2k) for k <= 4, else at the
  // schedule's own long-run rate (still <= 1/h = 1/(k+2)).
  const Rational half_k(1, 2 * k);
  const Rational long_run(2, 3 * k + 4);
  out.admissible_rate = long_run > half_k ? long_run : half_k;
  return out;
}

ScriptedScenario script_tie_blocking(int total_rounds) {
  if (total_rounds < 2) throw std::invalid_argument("need at least 2 rounds");

  ScriptedScenario out;
  out.graph = NetworkGraph::star(3);  // node 0 linked to 1 and 2
  out.injections.push_back({0, {0, 1}});  // packet 0
  out.injections.push_back({0, {0, 2}});  // packet 1

  // Link (0,1) up on odd rounds, link (0,2) on even rounds from 2 on.
  std::vector<ScriptedRound> rounds(2);
  rounds[0].permit_all = true;
  rounds[1].permit_all = true;
  rounds[0].up_links.emplace_back(0, 2);
  rounds[1].up_links.emplace_back(0, 1);
  out.oracle = OracleSchedule::scripted(std::move(rounds));
  out.oracle.claimed_latency = 2;

  out.policy = Policy::Sis;
  out.tie.mode = TieConfig::Mode::Arbitrary;
  out.tie.strategy = TieConfig::Strategy::Scripted;
  for (int t = 1; t < total_rounds; ++t) {
    // always the packet whose link is down this round
    out.tie.script.push_back({t, 0, static_cast<PacketId>(t % 2 == 1 ? 1 : 0)});
  }

  out.horizon = total_rounds;
  out.burstiness = 2;
  out.admissible_rate = Rational(0);
  return out;
}

}  // namespace radiosim
