#include "radiosim/wireline.hpp"

#include <algorithm>
#include <stdexcept>

#include "radiosim/packet.hpp"

namespace radiosim {

long long WirelineTrace::max_q_total() const {
  long long best = 0;
  for (const auto& r : rounds) best = std::max(best, r.q_total);
  return best;
}

WirelineTrace run_wireline(const WirelineConfig& config) {
  if (config.horizon <= 0) throw std::invalid_argument("horizon must be positive");
  const int links = static_cast<int>(config.graph.links.size());
  for (const auto& inj : config.injections) {
    if (inj.round < 0 || inj.round >= config.horizon)
      throw std::invalid_argument("wireline injection outside the horizon");
    if (inj.link_path.empty()) throw std::invalid_argument("empty wireline path");
    for (std::size_t i = 0; i < inj.link_path.size(); ++i) {
      const int link = inj.link_path[i];
      if (link < 0 || link >= links) throw std::invalid_argument("wireline path link out of range");
      if (i > 0 && config.graph.links[inj.link_path[i - 1]].second !=
                       config.graph.links[link].first)
        throw std::invalid_argument("wireline path links do not compose");
    }
  }

  WirelineTrace trace;
  trace.graph = config.graph;
  trace.policy = config.policy;
  trace.horizon = config.horizon;
  trace.rounds.reserve(config.horizon);

  // The policy comparison works on Packet, so mirror each wireline packet as a
  // Packet whose hop_index counts traversed links; queue keys are link indices.
  Scheduler scheduler(config.policy, config.tie, config.seed);
  std::vector<Packet> mirror;
  std::vector<WirelinePacket> packets;
  std::vector<std::vector<QueueEntry>> queues(links);
  std::vector<std::uint64_t> arrival_seq(links, 0);

  std::vector<WirelineInjection> script = config.injections;
  std::stable_sort(script.begin(), script.end(),
                   [](const auto& a, const auto& b) { return a.round < b.round; });
  std::size_t cursor = 0;

  for (int t = 0; t < config.horizon; ++t) {
    WirelineRound rec;
    rec.round = t;

    while (cursor < script.size() && script[cursor].round == t) {
      const auto& inj = script[cursor++];
      const PacketId id = static_cast<PacketId>(packets.size());
      packets.push_back({id, t, inj.link_path, {}, -1});
      Packet m;
      m.id = id;
      m.injection_round = t;
      // node itinerary stand-in: tails of the links plus the final head
      for (int link : inj.link_path) m.itinerary.push_back(config.graph.links[link].first);
      m.itinerary.push_back(config.graph.links[inj.link_path.back()].second);
      m.hop_index = 0;
      m.arrival_round = t;
      mirror.push_back(std::move(m));
      queues[inj.link_path.front()].push_back({id, arrival_seq[inj.link_path.front()]++});
      rec.injected.push_back(id);
    }

    // every link forwards its policy-max transmittable packet
    std::vector<WirelineMove> moves;
    for (int link = 0; link < links; ++link) {
      std::vector<QueueEntry> candidates;
      for (const auto& entry : queues[link])
        if (mirror[entry.packet].arrival_round < t) candidates.push_back(entry);
      const auto pick = scheduler.select(link, t, candidates, mirror);
      if (!pick) continue;
      const auto& path = packets[*pick].link_path;
      const int hop = mirror[*pick].hop_index;
      const int to = hop + 1 < static_cast<int>(path.size()) ? path[hop + 1] : -1;
      moves.push_back({*pick, link, to});
    }

    for (const auto& move : moves) {
      auto& q = queues[move.from_link];
      const auto it = std::find_if(q.begin(), q.end(),
                                   [&](const QueueEntry& e) { return e.packet == move.packet; });
      q.erase(it);
      mirror[move.packet].hop_index += 1;
      mirror[move.packet].arrival_round = t;
      packets[move.packet].leave_rounds.push_back(t);
      if (move.to_link < 0) {
        packets[move.packet].delivery_round = t;
      } else {
        queues[move.to_link].push_back({move.packet, arrival_seq[move.to_link]++});
      }
    }
    rec.moves = std::move(moves);

    rec.queue_sizes.resize(links);
    rec.q_total = 0;
    for (int link = 0; link < links; ++link) {
      rec.queue_sizes[link] = static_cast<int>(queues[link].size());
      rec.q_total += rec.queue_sizes[link];
    }
    trace.rounds.push_back(std::move(rec));
  }

  trace.packets = std::move(packets);
  return trace;
}

}  // namespace radiosim
