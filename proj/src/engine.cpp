#include "radiosim/engine.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace radiosim {

namespace {

void engine_check(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("engine invariant: ") + what);
}

void validate_config(const ExecutionConfig& config) {
  if (config.horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (config.success == SuccessModel::ScriptedLinks &&
      config.oracle.mode != OracleSchedule::Mode::Scripted)
    throw std::invalid_argument("scripted_links success model requires a scripted oracle");
  if (config.adversary.strategy == AdversarySpec::Strategy::Scripted) {
    for (const auto& event : config.adversary.script) {
      if (event.round < 0 || event.round >= config.horizon)
        throw std::invalid_argument("scripted injection outside the horizon");
      if (!validate_itinerary(config.graph, event.itinerary) || event.itinerary.size() < 2)
        throw std::invalid_argument("scripted injection with invalid itinerary");
    }
  }
  if (config.oracle.mode == OracleSchedule::Mode::Scripted) {
    for (const auto& round : config.oracle.script)
      for (const auto& [u, w] : round.up_links)
        if (config.graph.link_index(u, w) < 0)
          throw std::invalid_argument("scripted up link not present in graph");
  }
  if (config.oracle.mode == OracleSchedule::Mode::Transmitter &&
      config.oracle.transmitter.rows < config.graph.node_count())
    throw std::invalid_argument("transmitter array has fewer rows than nodes");
}

}  // namespace

ExecutionConfig config_from_scripted_scenario(const ScriptedScenario& scenario,
                                              SuccessModel success, HearingMode hearing) {
  ExecutionConfig config;
  config.graph = scenario.graph;
  config.adversary.strategy = AdversarySpec::Strategy::Scripted;
  config.adversary.script = scenario.injections;
  config.adversary.burstiness = scenario.burstiness > 0 ? scenario.burstiness : 1;
  config.adversary.rate = scenario.admissible_rate;
  config.policy = scenario.policy;
  config.tie = scenario.tie;
  config.oracle = scenario.oracle;
  config.hearing = hearing;
  config.success = success;
  config.horizon = scenario.horizon;
  return config;
}

ExecutionTrace run_execution(const ExecutionConfig& config) {
  validate_config(config);
  const int n = config.graph.node_count();

  ExecutionTrace trace;
  trace.graph = config.graph;
  trace.policy = config.policy;
  trace.hearing = config.hearing;
  trace.success = config.success;
  trace.oracle = config.oracle;
  trace.seed = config.seed;
  trace.horizon = config.horizon;
  trace.rounds.reserve(config.horizon);

  Scheduler scheduler(config.policy, config.tie, config.seed);
  std::vector<Packet> packets;
  std::vector<std::vector<QueueEntry>> queues(n);
  std::vector<std::uint64_t> arrival_seq(n, 0);

  std::vector<InjectionEvent> script = config.adversary.script;
  std::stable_sort(script.begin(), script.end(),
                   [](const auto& a, const auto& b) { return a.round < b.round; });
  std::size_t script_cursor = 0;
  std::unique_ptr<TokenBucketInjector> injector;
  if (config.adversary.strategy == AdversarySpec::Strategy::Stochastic)
    injector = std::make_unique<TokenBucketInjector>(config.graph, config.adversary,
                                                     mix64(config.seed ^ 0x1a2b3c4dULL));

  long long injected_total = 0;
  long long delivered_total = 0;

  for (int t = 0; t < config.horizon; ++t) {
    RoundRecord rec;
    rec.round = t;

    // (1) injections enter queues; transmittable from the next round
    std::vector<InjectionEvent> events;
    if (injector) {
      events = injector->events_for_round(t);
    } else {
      while (script_cursor < script.size() && script[script_cursor].round == t)
        events.push_back(script[script_cursor++]);
    }
    for (const auto& event : events) {
      Packet p;
      p.id = static_cast<PacketId>(packets.size());
      p.injection_round = t;
      p.itinerary = event.itinerary;
      p.arrival_round = t;
      queues[event.itinerary.front()].push_back({p.id, arrival_seq[event.itinerary.front()]++});
      rec.injected.push_back(p.id);
      packets.push_back(std::move(p));
      ++injected_total;
    }

    // (2) oracle indication
    const auto& up = config.oracle.up_links(t);
    auto link_up = [&](int u, int w) {
      return std::find(up.begin(), up.end(), std::make_pair(u, w)) != up.end();
    };

    // (3) hearing control + scheduling: at most one attempt per node
    std::vector<std::uint8_t> attempting(n, 0);
    if (config.hearing == HearingMode::Proactive &&
        config.success == SuccessModel::RadioCollision) {
      // hearability is approximated from the oracle indication, assuming every
      // permitted node with a transmittable packet transmits
      std::vector<std::uint8_t> assumed(n, 0);
      for (int x = 0; x < n; ++x) {
        if (!config.oracle.is_permitted(x, t, n)) continue;
        for (const auto& entry : queues[x])
          if (packets[entry.packet].arrival_round < t) {
            assumed[x] = 1;
            break;
          }
      }
      for (int x = 0; x < n; ++x) {
        if (!assumed[x]) continue;
        std::vector<std::uint8_t> hearable(n, 0);
        for (int w : config.graph.neighbors(x)) {
          if (assumed[w]) continue;  // half duplex
          bool sole = true;
          for (int y : config.graph.neighbors(w))
            if (y != x && assumed[y]) {
              sole = false;
              break;
            }
          hearable[w] = sole ? 1 : 0;
        }
        std::vector<QueueEntry> candidates;
        for (const auto& entry : queues[x])
          if (packets[entry.packet].arrival_round < t && hearable[packets[entry.packet].next_hop()])
            candidates.push_back(entry);
        if (const auto pick = scheduler.select(x, t, candidates, packets))
          rec.attempts.push_back({x, *pick, packets[*pick].next_hop()});
      }
    } else {
      for (int x = 0; x < n; ++x) {
        if (!config.oracle.is_permitted(x, t, n)) continue;
        std::vector<QueueEntry> candidates;
        for (const auto& entry : queues[x]) {
          if (packets[entry.packet].arrival_round >= t) continue;
          if (config.hearing == HearingMode::Proactive) {
            const int next = packets[entry.packet].next_hop();
            const bool hearable = config.success == SuccessModel::InterferenceFree ||
                                  link_up(x, next);
            if (!hearable) continue;
          }
          candidates.push_back(entry);
        }
        if (const auto pick = scheduler.select(x, t, candidates, packets))
          rec.attempts.push_back({x, *pick, packets[*pick].next_hop()});
      }
    }
    for (const auto& a : rec.attempts) {
      engine_check(!attempting[a.node], "single transmission per node per round");
      attempting[a.node] = 1;
    }

    // (4) success resolution
    std::vector<int> heard_count(n, 0);
    for (const auto& a : rec.attempts) {
      bool success = false;
      switch (config.success) {
        case SuccessModel::ScriptedLinks:
          success = link_up(a.node, a.to);
          break;
        case SuccessModel::InterferenceFree:
          success = true;
          break;
        case SuccessModel::RadioCollision: {
          if (attempting[a.to]) break;  // half duplex
          int transmitting_neighbors = 0;
          for (int y : config.graph.neighbors(a.to))
            transmitting_neighbors += attempting[y];
          if (transmitting_neighbors >= 2) {
            if (rec.collision_receivers.empty() || rec.collision_receivers.back() != a.to)
              rec.collision_receivers.push_back(a.to);
            break;
          }
          success = transmitting_neighbors == 1;
          break;
        }
      }
      if (success) {
        rec.heard.push_back({a.to, a.node, a.packet});
        ++heard_count[a.to];
      }
    }
    std::sort(rec.collision_receivers.begin(), rec.collision_receivers.end());
    rec.collision_receivers.erase(
        std::unique(rec.collision_receivers.begin(), rec.collision_receivers.end()),
        rec.collision_receivers.end());

    if (config.success != SuccessModel::InterferenceFree)
      for (int w = 0; w < n; ++w)
        engine_check(heard_count[w] <= 1, "single heard message per node per round");
    if (config.hearing == HearingMode::Proactive)
      engine_check(rec.attempts.size() == rec.heard.size(),
                   "proactive attempts are always heard");

    // (5) queue updates: heard packets advance, everything else stays put
    for (const auto& h : rec.heard) {
      auto& q = queues[h.sender];
      const auto it = std::find_if(q.begin(), q.end(),
                                   [&](const QueueEntry& e) { return e.packet == h.packet; });
      engine_check(it != q.end(), "heard packet was queued at its sender");
      q.erase(it);
      Packet& p = packets[h.packet];
      engine_check(p.next_hop() == h.receiver, "heard by the intended recipient");
      p.leave_rounds.push_back(t);
      p.hop_index += 1;
      if (p.hop_index == p.hops()) {
        p.delivery_round = t;
        rec.delivered.push_back(p.id);
        ++delivered_total;
      } else {
        p.arrival_round = t;
        queues[h.receiver].push_back({p.id, arrival_seq[h.receiver]++});
      }
    }

    rec.queue_sizes.resize(n);
    rec.q_total = 0;
    for (int v = 0; v < n; ++v) {
      rec.queue_sizes[v] = static_cast<int>(queues[v].size());
      rec.q_total += rec.queue_sizes[v];
    }
    engine_check(injected_total == rec.q_total + delivered_total,
                 "packet conservation: injected = queued + delivered");

    trace.rounds.push_back(std::move(rec));
  }

  trace.packets.reserve(packets.size());
  for (const auto& p : packets) {
    engine_check(!p.delivered() || static_cast<int>(p.leave_rounds.size()) == p.hops(),
                 "delivered packet traversed its whole itinerary");
    trace.packets.push_back({p.id, p.injection_round, p.itinerary, p.leave_rounds,
                             p.delivery_round});
  }
  return trace;
}

}  // namespace radiosim
