#include "radiosim/scheduling.hpp"

#include <algorithm>
#include <stdexcept>

namespace radiosim {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Policy parse_policy(const std::string& name) {
  if (name == "FIFO") return Policy::Fifo;
  if (name == "LIFO") return Policy::Lifo;
  if (name == "SIS") return Policy::Sis;
  if (name == "LIS") return Policy::Lis;
  if (name == "NTG") return Policy::Ntg;
  if (name == "FTG") return Policy::Ftg;
  if (name == "NTS") return Policy::Nts;
  if (name == "FFS") return Policy::Ffs;
  throw std::invalid_argument("unknown policy '" + name + "'");
}

std::string policy_name(Policy policy) {
  switch (policy) {
    case Policy::Fifo: return "FIFO";
    case Policy::Lifo: return "LIFO";
    case Policy::Sis: return "SIS";
    case Policy::Lis: return "LIS";
    case Policy::Ntg: return "NTG";
    case Policy::Ftg: return "FTG";
    case Policy::Nts: return "NTS";
    case Policy::Ffs: return "FFS";
  }
  return "?";
}

Scheduler::Scheduler(Policy policy, TieConfig tie, std::uint64_t seed)
    : policy_(policy), tie_(std::move(tie)), seed_(seed) {
  for (const auto& choice : tie_.script) script_[{choice.round, choice.queue}] = choice.packet;
}

int Scheduler::compare(const QueueEntry& a, const QueueEntry& b,
                       const std::vector<Packet>& packets) const {
  const Packet& pa = packets[a.packet];
  const Packet& pb = packets[b.packet];
  auto by = [](auto ka, auto kb) { return ka < kb ? -1 : (ka > kb ? 1 : 0); };
  switch (policy_) {
    case Policy::Fifo: return by(a.arrival_seq, b.arrival_seq);
    case Policy::Lifo: return by(b.arrival_seq, a.arrival_seq);
    case Policy::Sis: return by(pb.injection_round, pa.injection_round);  // newest first
    case Policy::Lis: return by(pa.injection_round, pb.injection_round);  // oldest first
    case Policy::Ntg: return by(pa.remaining_hops(), pb.remaining_hops());
    case Policy::Ftg: return by(pb.remaining_hops(), pa.remaining_hops());
    case Policy::Nts: return by(pa.hop_index, pb.hop_index);
    case Policy::Ffs: return by(pb.hop_index, pa.hop_index);
  }
  return 0;
}

std::uint64_t Scheduler::rank_of(int queue, PacketId p) {
  auto [it, inserted] = ranks_.try_emplace({queue, p}, 0);
  if (inserted) {
    it->second = tie_.rule == TieConfig::PermanentRule::FixedId
                     ? ~static_cast<std::uint64_t>(p)  // lower id = higher rank
                     : mix64(seed_ ^ mix64(static_cast<std::uint64_t>(queue) << 32 | p));
  }
  return it->second;
}

bool Scheduler::permanent_before(int queue, PacketId p, PacketId q) {
  if (p == q) return false;
  const auto key = std::make_pair(queue, std::minmax(p, q));
  auto it = order_.find(key);
  if (it == order_.end()) {
    const std::uint64_t rp = rank_of(queue, key.second.first);
    const std::uint64_t rq = rank_of(queue, key.second.second);
    // rank ties fall back to id order, so the relation stays antisymmetric
    const bool lo_first = rp != rq ? rp > rq : true;
    it = order_.emplace(key, lo_first).first;
  }
  return p == key.second.first ? it->second : !it->second;
}

PacketId Scheduler::break_tie(int queue, int round, const std::vector<PacketId>& tied) {
  if (tied.size() == 1) return tied.front();
  if (tie_.mode == TieConfig::Mode::Permanent) {
    PacketId best = tied.front();
    for (std::size_t i = 1; i < tied.size(); ++i)
      if (permanent_before(queue, tied[i], best)) best = tied[i];
    return best;
  }
  switch (tie_.strategy) {
    case TieConfig::Strategy::FixedId:
      return *std::min_element(tied.begin(), tied.end());
    case TieConfig::Strategy::Scripted: {
      const auto it = script_.find({round, queue});
      if (it != script_.end() &&
          std::find(tied.begin(), tied.end(), it->second) != tied.end())
        return it->second;
      return *std::min_element(tied.begin(), tied.end());
    }
    case TieConfig::Strategy::SeededRandom: {
      std::vector<PacketId> sorted = tied;
      std::sort(sorted.begin(), sorted.end());
      const std::uint64_t roll =
          mix64(seed_ ^ mix64(static_cast<std::uint64_t>(round) << 20 ^ static_cast<std::uint64_t>(queue)));
      return sorted[roll % sorted.size()];
    }
  }
  return tied.front();
}

std::optional<PacketId> Scheduler::select(int queue, int round,
                                          const std::vector<QueueEntry>& candidates,
                                          const std::vector<Packet>& packets) {
  if (candidates.empty()) return std::nullopt;
  std::vector<PacketId> tied{candidates.front().packet};
  QueueEntry best = candidates.front();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const int c = compare(candidates[i], best, packets);
    if (c < 0) {
      best = candidates[i];
      tied.assign(1, candidates[i].packet);
    } else if (c == 0) {
      tied.push_back(candidates[i].packet);
    }
  }
  return break_tie(queue, round, tied);
}

}  // namespace radiosim
