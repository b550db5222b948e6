#include "radiosim/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace radiosim {

using nlohmann::json;

HearingMode parse_hearing_mode(const std::string& name) {
  if (name == "proactive") return HearingMode::Proactive;
  if (name == "reactive") return HearingMode::Reactive;
  throw std::invalid_argument("unknown hearing mode '" + name + "'");
}

std::string hearing_mode_name(HearingMode mode) {
  return mode == HearingMode::Proactive ? "proactive" : "reactive";
}

SuccessModel parse_success_model(const std::string& name) {
  if (name == "scripted_links") return SuccessModel::ScriptedLinks;
  if (name == "radio_collision") return SuccessModel::RadioCollision;
  if (name == "interference_free") return SuccessModel::InterferenceFree;
  throw std::invalid_argument("unknown success model '" + name + "'");
}

std::string success_model_name(SuccessModel model) {
  switch (model) {
    case SuccessModel::ScriptedLinks: return "scripted_links";
    case SuccessModel::RadioCollision: return "radio_collision";
    case SuccessModel::InterferenceFree: return "interference_free";
  }
  return "?";
}

long long ExecutionTrace::max_q_total() const {
  long long best = 0;
  for (const auto& r : rounds) best = std::max(best, r.q_total);
  return best;
}

long long ExecutionTrace::max_queue_size() const {
  long long best = 0;
  for (const auto& r : rounds)
    for (int size : r.queue_sizes) best = std::max(best, static_cast<long long>(size));
  return best;
}

long long ExecutionTrace::max_delay() const {
  long long best = 0;
  const int last = horizon - 1;
  for (const auto& p : packets) {
    const long long spent =
        (p.delivery_round >= 0 ? p.delivery_round : last) - p.injection_round;
    best = std::max(best, spent);
  }
  return best;
}

long long ExecutionTrace::total_delivered() const {
  long long n = 0;
  for (const auto& p : packets) n += p.delivery_round >= 0 ? 1 : 0;
  return n;
}

void ExecutionTrace::write_jsonl(std::ostream& out) const {
  json meta;
  meta["type"] = "meta";
  meta["nodes"] = graph.node_count();
  json edges = json::array();
  for (const auto& [u, w] : graph.edges()) edges.push_back(json::array({u, w}));
  meta["edges"] = edges;
  meta["policy"] = policy_name(policy);
  meta["hearing"] = hearing_mode_name(hearing);
  meta["success"] = success_model_name(success);
  meta["oracle"] = oracle_mode_name(oracle.mode);
  meta["seed"] = seed;
  meta["horizon"] = horizon;
  out << meta.dump() << '\n';

  for (const auto& r : rounds) {
    json rec;
    rec["type"] = "round";
    rec["round"] = r.round;
    rec["permitted"] = oracle.permitted_nodes(r.round, graph.node_count());
    json attempts = json::array();
    for (const auto& a : r.attempts) attempts.push_back(json::array({a.node, a.packet, a.to}));
    rec["attempts"] = attempts;
    json heard = json::array();
    for (const auto& h : r.heard) heard.push_back(json::array({h.receiver, h.sender, h.packet}));
    rec["heard"] = heard;
    rec["collisions"] = r.collision_receivers;
    rec["injected"] = r.injected;
    rec["delivered"] = r.delivered;
    rec["queues"] = r.queue_sizes;
    rec["q_total"] = r.q_total;
    out << rec.dump() << '\n';
  }
  for (const auto& p : packets) {
    json rec;
    rec["type"] = "packet";
    rec["id"] = p.id;
    rec["injected"] = p.injection_round;
    rec["itinerary"] = p.itinerary;
    rec["leaves"] = p.leave_rounds;
    rec["delivered"] = p.delivery_round;
    out << rec.dump() << '\n';
  }
}

std::string ExecutionTrace::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

void ExecutionTrace::write_metrics_csv(std::ostream& out) const {
  out << "round,Q_total";
  for (int v = 0; v < graph.node_count(); ++v) out << ",q" << v;
  out << '\n';
  for (const auto& r : rounds) {
    out << r.round << ',' << r.q_total;
    for (int size : r.queue_sizes) out << ',' << size;
    out << '\n';
  }
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

TraceReplayer::TraceReplayer(const ExecutionTrace& trace) : trace_(trace) {
  queues_.assign(trace.graph.node_count(), {});
  arrival_round_.assign(trace.packets.size(), -1);
  hop_index_.assign(trace.packets.size(), 0);
}

int TraceReplayer::step() {
  if (done()) throw std::logic_error("replayer already finished");
  const int t = next_round_++;
  const RoundRecord& rec = trace_.rounds[t];

  for (PacketId id : rec.injected) {
    const auto& p = trace_.packets[id];
    queues_[p.itinerary.front()].push_back(id);
    arrival_round_[id] = t;
  }

  ready_links_.clear();
  ready_nodes_.assign(trace_.graph.node_count(), 0);
  std::vector<std::uint8_t> link_seen(trace_.graph.link_count(), 0);
  for (int node = 0; node < trace_.graph.node_count(); ++node) {
    for (PacketId id : queues_[node]) {
      if (arrival_round_[id] >= t) continue;
      ready_nodes_[node] = 1;
      const auto& itin = trace_.packets[id].itinerary;
      const int next = itin[hop_index_[id] + 1];
      const int link = trace_.graph.link_index(node, next);
      if (link >= 0 && !link_seen[link]) {
        link_seen[link] = 1;
        ready_links_.push_back(link);
      }
    }
  }
  std::sort(ready_links_.begin(), ready_links_.end());

  for (const auto& h : rec.heard) {
    auto& q = queues_[h.sender];
    const auto it = std::find(q.begin(), q.end(), h.packet);
    if (it == q.end()) throw std::logic_error("trace replay: heard packet not queued at sender");
    q.erase(it);
    hop_index_[h.packet] += 1;
    const auto& itin = trace_.packets[h.packet].itinerary;
    if (hop_index_[h.packet] < static_cast<int>(itin.size()) - 1) {
      queues_[h.receiver].push_back(h.packet);
      arrival_round_[h.packet] = t;
    }
  }
  return t;
}

}  // namespace radiosim
