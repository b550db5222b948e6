#include "radiosim/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "radiosim/engine.hpp"

namespace radiosim {

std::vector<Rational> sis_k_sequence(int b, const Rational& r, int h, int d) {
  if (b < 1 || h < 1 || d < 1) throw std::invalid_argument("b, h, d must be positive");
  if (r < Rational(0)) throw std::invalid_argument("rate must be nonnegative");
  const Rational drain = Rational(1) - r * Rational(h);
  if (drain <= Rational(0)) throw std::domain_error("requires r h < 1");
  std::vector<Rational> k;
  k.reserve(d);
  k.push_back(Rational(b));
  for (int i = 1; i < d; ++i) k.push_back((k.back() + Rational(b)) / drain);
  return k;
}

SisBounds sis_bounds(int b, const Rational& r, int h, int d) {
  SisBounds out;
  out.k = sis_k_sequence(b, r, h, d);
  out.queue_bound = out.k.back();
  const Rational drain = Rational(1) - r * Rational(h);
  for (const Rational& ki : out.k)
    out.delay_bound = out.delay_bound + ((ki + Rational(b)) / drain) * Rational(h);
  return out;
}

LisBounds lis_bounds(int b, const Rational& r, int h, int d) {
  if (b < 1 || h < 1 || d < 1) throw std::invalid_argument("b, h, d must be positive");
  if (r < Rational(0) || r * Rational(h) > Rational(1))
    throw std::domain_error("requires 0 <= r <= 1/h");
  LisBounds out;
  out.delay_bound = (Rational(b) + r) * Rational(h) * Rational(d - 1) + Rational(1);
  out.queue_bound = r * out.delay_bound + Rational(b);
  out.queue_bound_floor = out.queue_bound.floor();
  return out;
}

Rational lis_transit_bound(const Rational& a, int b, const Rational& r, int h, int d) {
  if (a < Rational(1)) throw std::invalid_argument("a must be at least 1");
  const Rational hd = Rational(h) * Rational(d - 1);
  return (r * a + Rational(b)) * hd / (Rational(1) + r * hd);
}

std::string BoundReport::to_line() const {
  std::string line = "bound_report policy=" + policy_name(policy);
  line += " b=" + std::to_string(b) + " r=" + r.to_string() + " h=" + std::to_string(h) +
          " d=" + std::to_string(d);
  line += " queue_bound=" + queue_bound.to_string() +
          " observed_max_queue=" + std::to_string(observed_max_queue) +
          " queue=" + (queue_pass ? std::string("PASS") : std::string("FAIL"));
  line += " delay_bound=" + delay_bound.to_string() +
          " observed_max_delay=" + std::to_string(observed_max_delay) +
          " delay=" + (delay_pass ? std::string("PASS") : std::string("FAIL"));
  return line;
}

BoundReport check_bounds(const ExecutionTrace& trace, Policy policy, int b, const Rational& r,
                         int h, int d) {
  BoundReport report;
  report.policy = policy;
  report.b = b;
  report.h = h;
  report.d = d;
  report.r = r;
  if (policy == Policy::Sis) {
    const SisBounds bounds = sis_bounds(b, r, h, d);
    report.queue_bound = bounds.queue_bound;
    report.delay_bound = bounds.delay_bound;
  } else if (policy == Policy::Lis) {
    const LisBounds bounds = lis_bounds(b, r, h, d);
    report.queue_bound = Rational(bounds.queue_bound_floor);
    report.delay_bound = bounds.delay_bound;
  } else {
    throw std::invalid_argument("bounds are defined for SIS and LIS only");
  }
  report.observed_max_queue = trace.max_queue_size();
  report.observed_max_delay = trace.max_delay();
  report.queue_pass = Rational(report.observed_max_queue) <= report.queue_bound;
  report.delay_pass = Rational(report.observed_max_delay) <= report.delay_bound;
  return report;
}

std::string verdict_name(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::Growth: return "growth";
    case StabilityVerdict::Bounded: return "bounded";
    case StabilityVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

InstabilityReport detect_instability(const ExecutionTrace& trace,
                                     const std::vector<int>& checkpoint_rounds,
                                     const Rational& slope_threshold) {
  if (checkpoint_rounds.size() < 3)
    throw std::invalid_argument("need at least 3 checkpoint rounds");
  InstabilityReport report;
  for (int round : checkpoint_rounds) {
    if (round < 0 || round >= static_cast<int>(trace.rounds.size()))
      throw std::invalid_argument("checkpoint outside the trace");
    report.q_at_checkpoints.push_back(trace.q_at(round));
  }
  const auto& q = report.q_at_checkpoints;
  const long long count = static_cast<long long>(q.size());

  // exact least-squares slope over (index, Q)
  Rational sum_x(0), sum_y(0), sum_xy(0), sum_xx(0);
  for (long long i = 0; i < count; ++i) {
    sum_x = sum_x + Rational(i);
    sum_y = sum_y + Rational(q[i]);
    sum_xy = sum_xy + Rational(i) * Rational(q[i]);
    sum_xx = sum_xx + Rational(i * i);
  }
  const Rational denom = Rational(count) * sum_xx - sum_x * sum_x;
  report.slope = denom.is_zero() ? Rational(0)
                                 : (Rational(count) * sum_xy - sum_x * sum_y) / denom;

  const bool strictly_increasing =
      std::adjacent_find(q.begin(), q.end(), [](long long a, long long c) { return a >= c; }) ==
      q.end();
  if (strictly_increasing && report.slope > slope_threshold) {
    report.verdict = StabilityVerdict::Growth;
    return report;
  }
  // bounded: the second half of the run reaches no higher than the first
  const int horizon = static_cast<int>(trace.rounds.size());
  long long first_max = 0, last_max = 0;
  for (int t = 0; t < horizon; ++t)
    (t < horizon / 2 ? first_max : last_max) = std::max(
        t < horizon / 2 ? first_max : last_max, trace.q_at(t));
  report.verdict = last_max <= first_max ? StabilityVerdict::Bounded
                                         : StabilityVerdict::Inconclusive;
  return report;
}

std::pair<NetworkGraph, EquivalenceMap> equivalent_network(const WirelineGraph& graph) {
  if (graph.links.empty()) throw std::invalid_argument("wireline graph has no links");
  const int links = static_cast<int>(graph.links.size());
  std::set<std::pair<int, int>> edges;
  for (int e = 0; e < links; ++e)
    for (int f : graph.successors_of(e))
      if (e != f) edges.insert(std::minmax(e, f));

  EquivalenceMap map;
  map.links = graph.links;
  map.absorb_node.assign(links, -1);
  for (int e = 0; e < links; ++e) {
    const auto succ = graph.successors_of(e);
    for (int f : succ)
      if (f != e) {
        map.absorb_node[e] = f;
        break;
      }
  }
  return {NetworkGraph::from_edges(links, {edges.begin(), edges.end()}), std::move(map)};
}

InjectionEvent transform_injection(const EquivalenceMap& map, const WirelineInjection& injection) {
  InjectionEvent event;
  event.round = injection.round;
  event.itinerary = injection.link_path;
  const int last = injection.link_path.back();
  if (map.absorb_node[last] < 0)
    throw std::invalid_argument("wireline path ends at a link with no successor to absorb at");
  event.itinerary.push_back(map.absorb_node[last]);
  return event;
}

ExecutionConfig equivalent_execution_config(const WirelineConfig& config) {
  auto [graph, map] = equivalent_network(config.graph);
  ExecutionConfig out;
  out.graph = std::move(graph);
  out.adversary.strategy = AdversarySpec::Strategy::Scripted;
  for (const auto& injection : config.injections)
    out.adversary.script.push_back(transform_injection(map, injection));
  out.policy = config.policy;
  out.tie = config.tie;
  out.oracle = OracleSchedule::work_conserving();
  out.hearing = HearingMode::Reactive;
  out.success = SuccessModel::InterferenceFree;
  out.horizon = config.horizon;
  out.seed = config.seed;
  return out;
}

TraceComparison compare_equivalent_traces(const WirelineTrace& wireline,
                                          const ExecutionTrace& radio,
                                          const EquivalenceMap& map) {
  TraceComparison result;
  if (radio.oracle.mode != OracleSchedule::Mode::WorkConserving) {
    result.detail = "precondition: radio run must use the work-conserving oracle";
    return result;
  }
  if (radio.success != SuccessModel::InterferenceFree) {
    result.detail = "precondition: radio run must use the interference-free success model";
    return result;
  }
  if (radio.policy != wireline.policy) {
    result.detail = "precondition: both runs must use the same scheduling policy";
    return result;
  }
  if (radio.graph.node_count() != static_cast<int>(map.links.size())) {
    result.detail = "precondition: radio graph does not match the transform";
    return result;
  }

  const int horizon = std::min(wireline.horizon, static_cast<int>(radio.rounds.size()));
  const int queues = static_cast<int>(map.links.size());

  std::vector<std::vector<PacketId>> wire_queues(queues);
  std::vector<int> wire_position(wireline.packets.size(), -1);
  std::vector<int> wire_hop(wireline.packets.size(), 0);

  TraceReplayer radio_replay(radio);
  for (int t = 0; t < horizon; ++t) {
    const auto& rec = wireline.rounds[t];
    for (PacketId id : rec.injected) {
      wire_queues[wireline.packets[id].link_path.front()].push_back(id);
      wire_position[id] = wireline.packets[id].link_path.front();
    }
    for (const auto& move : rec.moves) {
      auto& q = wire_queues[move.from_link];
      q.erase(std::find(q.begin(), q.end(), move.packet));
      if (move.to_link >= 0) {
        wire_queues[move.to_link].push_back(move.packet);
        wire_position[move.packet] = move.to_link;
      } else {
        wire_position[move.packet] = -1;
      }
    }
    radio_replay.step();

    for (int q = 0; q < queues; ++q) {
      std::vector<PacketId> wire_sorted = wire_queues[q];
      std::vector<PacketId> radio_sorted = radio_replay.queues()[q];
      std::sort(wire_sorted.begin(), wire_sorted.end());
      std::sort(radio_sorted.begin(), radio_sorted.end());
      if (wire_sorted != radio_sorted) {
        result.divergence_round = t;
        result.divergence_queue = q;
        result.detail = "queue membership diverges at round " + std::to_string(t) +
                        ", queue " + std::to_string(q);
        return result;
      }
    }
  }
  result.pass = true;
  return result;
}

}  // namespace radiosim
