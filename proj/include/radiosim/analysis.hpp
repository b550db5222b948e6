#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radiosim/adversary.hpp"
#include "radiosim/engine.hpp"
#include "radiosim/graph.hpp"
#include "radiosim/rational.hpp"
#include "radiosim/trace.hpp"
#include "radiosim/wireline.hpp"

namespace radiosim {

/// Recurrence k_1 = b, k_{i+1} = (k_i + b) / (1 - r h), evaluated exactly.
/// Requires 0 <= r < 1/h (throws std::domain_error at r h >= 1).
std::vector<Rational> sis_k_sequence(int b, const Rational& r, int h, int d);

struct SisBounds {
  std::vector<Rational> k;
  Rational queue_bound{0};  // k_d
  Rational delay_bound{0};  // sum over i of ((k_i + b) / (1 - r h)) * h
};
SisBounds sis_bounds(int b, const Rational& r, int h, int d);

struct LisBounds {
  Rational queue_bound{0};      // r * ((b + r) h (d-1) + 1) + b
  long long queue_bound_floor;  // integer packet bound
  Rational delay_bound{0};      // (b + r) h (d-1) + 1
};
LisBounds lis_bounds(int b, const Rational& r, int h, int d);

/// (r a + b) h (d-1) / (1 + r h (d-1)); at a* = (b+r)h(d-1)+1 this equals
/// a* - 1 exactly.
Rational lis_transit_bound(const Rational& a, int b, const Rational& r, int h, int d);

struct BoundReport {
  Policy policy = Policy::Sis;
  int b = 0, h = 0, d = 0;
  Rational r{0};
  Rational queue_bound{0};
  Rational delay_bound{0};
  long long observed_max_queue = 0;
  long long observed_max_delay = 0;  // includes sojourn of still-queued packets
  bool queue_pass = false;
  bool delay_pass = false;
  bool pass() const { return queue_pass && delay_pass; }
  std::string to_line() const;  // one structured text record
};

/// Observed per-queue maxima and packet delays against the policy's bounds.
/// Zero tolerance: the comparison is exact.
BoundReport check_bounds(const ExecutionTrace& trace, Policy policy, int b, const Rational& r,
                         int h, int d);

enum class StabilityVerdict { Growth, Bounded, Inconclusive };
std::string verdict_name(StabilityVerdict verdict);

struct InstabilityReport {
  StabilityVerdict verdict = StabilityVerdict::Inconclusive;
  Rational slope{0};  // least-squares Q-per-checkpoint-step, exact
  std::vector<long long> q_at_checkpoints;
};

/// Growth iff Q at the checkpoints is strictly increasing with least-squares
/// slope above the threshold; bounded iff the max over the last half of the
/// checkpoints does not exceed the max over the first half.
InstabilityReport detect_instability(const ExecutionTrace& trace,
                                     const std::vector<int>& checkpoint_rounds,
                                     const Rational& slope_threshold = Rational(0));

/// Wireline link i <-> radio node i. absorb_node[i] is the sink appended to
/// itineraries ending at link i (-1 when the link has no successor).
struct EquivalenceMap {
  std::vector<std::pair<int, int>> links;
  std::vector<int> absorb_node;
};

/// Equivalent radio network: one node per directed link, an edge wherever two
/// links compose head to tail.
std::pair<NetworkGraph, EquivalenceMap> equivalent_network(const WirelineGraph& graph);

/// p-equivalent itinerary: the path's queues replaced by their equivalent
/// nodes, plus the absorbing node of the last link. Throws when the last link
/// has no successor to absorb at.
InjectionEvent transform_injection(const EquivalenceMap& map, const WirelineInjection& injection);

/// Radio config equivalent to a wireline one: transformed graph and
/// injections, work-conserving oracle, interference-free successes, same
/// policy, tie configuration and seed.
ExecutionConfig equivalent_execution_config(const WirelineConfig& config);

struct TraceComparison {
  bool pass = false;
  int divergence_round = -1;
  int divergence_queue = -1;  // wireline link index == radio node index
  std::string detail;
};

/// Round-by-round queue membership comparison under the map: packet p sits in
/// wireline queue q exactly when it sits in the equivalent radio node's queue.
/// Precondition violations (oracle, success model, policy) are reported as
/// failures, not ignored.
TraceComparison compare_equivalent_traces(const WirelineTrace& wireline,
                                          const ExecutionTrace& radio,
                                          const EquivalenceMap& map);

}  // namespace radiosim
