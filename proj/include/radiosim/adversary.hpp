#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "radiosim/graph.hpp"
#include "radiosim/oracle.hpp"
#include "radiosim/rational.hpp"
#include "radiosim/scheduling.hpp"

namespace radiosim {

/// A packet injection: the full itinerary is fixed here and never changes.
struct InjectionEvent {
  int round = 0;
  std::vector<int> itinerary;  // source = first node

  friend bool operator==(const InjectionEvent&, const InjectionEvent&) = default;
};

/// Injection process of type (burstiness, rate).
struct AdversarySpec {
  enum class Strategy { Scripted, Stochastic };

  Rational rate{0};
  int burstiness = 1;
  Strategy strategy = Strategy::Scripted;

  std::vector<InjectionEvent> script;  // Scripted

  // Stochastic: token bucket per node, itineraries drawn from the pool.
  std::vector<std::vector<int>> path_pool;  // empty -> all simple paths (capped)
  int attempts_per_round = 2;
};

struct AdmissibilityReport {
  bool pass = true;
  // first violation in detection order: smallest interval end, then the
  // tightest window (largest start), then node
  int interval_start = -1;
  int interval_end = -1;
  int node = -1;
  long long count = 0;
  Rational bound{0};
  bool exhaustive = true;  // false: event-aligned exact scan (large horizons)
};

/// Checks I(tau, v) <= rate * |tau| + burstiness for every interval tau of
/// [0, horizon] and every node, counting packets whose itinerary contains v.
/// |[a,b]| counts both endpoints. Exhaustive over all intervals up to a
/// desk-scale horizon; above that, an exact event-aligned scan is used and
/// the witness is a violating interval but not necessarily the first.
AdmissibilityReport check_admissibility(const std::vector<InjectionEvent>& events,
                                        const Rational& rate, int burstiness, int horizon,
                                        int node_count);

/// Token-bucket injection generator: one bucket per node, capacity
/// `burstiness`, refill `rate` per round; a packet is injected only when every
/// distinct node on its itinerary has a full token. Admissible by
/// construction; deterministic given (seed, round).
class TokenBucketInjector {
 public:
  TokenBucketInjector(const NetworkGraph& graph, const AdversarySpec& spec, std::uint64_t seed);

  /// Events for this round; rounds must be advanced in order from 0.
  std::vector<InjectionEvent> events_for_round(int round);

  const std::vector<std::vector<int>>& pool() const { return pool_; }

 private:
  const NetworkGraph& graph_;
  AdversarySpec spec_;
  std::uint64_t seed_ = 0;
  int next_round_ = 0;
  std::vector<Rational> tokens_;
  std::vector<std::vector<int>> pool_;
};

/// Enumerates simple paths with at least one edge, ascending by length then
/// lexicographic, capped at max_paths.
std::vector<std::vector<int>> enumerate_simple_paths(const NetworkGraph& graph, int max_paths);

/// A ready-to-run scripted scenario produced by the instability generators.
struct ScriptedScenario {
  NetworkGraph graph;
  std::vector<InjectionEvent> injections;
  OracleSchedule oracle;
  Policy policy = Policy::Sis;
  TieConfig tie;
  int horizon = 0;
  std::vector<int> checkpoints;       // end-of-iteration rounds when phased
  Rational admissible_rate{0};        // rate the injection log is admissible at
  int burstiness = 0;
};

/// Two-phase reactive instability scenario on the 3-node star (center 0,
/// leaves 1 and 2): Phase 1 injects 2b packets with targets alternating
/// between the leaves, spaced k+1 rounds, while each link's up-rounds sit
/// inside the other target's newest-packet window, so the newest-first
/// selection always attempts the unavailable link; Phase 2 brings both links
/// up together every k+2 rounds for b deliveries. Both links are available at
/// least once every k+2 rounds throughout, and each iteration of length
/// b(3k+4) leaves b more packets queued. Requires k >= 2 and even burstiness
/// (default: k rounded up to even).
ScriptedScenario script_sis_reactive_instability(int k, int iterations, int burstiness = 0);

/// Tie-blocking scenario: node 0 linked to nodes 1 and 2, two packets injected
/// together at round 0, links up alternately, and a scripted tie-breaker that
/// always picks the packet whose link is down. No packet is ever delivered.
ScriptedScenario script_tie_blocking(int rounds);

}  // namespace radiosim
