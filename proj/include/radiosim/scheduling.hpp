#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radiosim/packet.hpp"

namespace radiosim {

/// Queueing policies. SIS prefers the packet injected most recently, LIS the
/// one injected earliest; NTG/FTG/NTS/FFS rank by position on the assigned
/// itinerary (not graph distance); FIFO/LIFO by queue-arrival order.
enum class Policy { Fifo, Lifo, Sis, Lis, Ntg, Ftg, Nts, Ffs };

Policy parse_policy(const std::string& name);
std::string policy_name(Policy policy);

/// What happens when the policy ranks two packets equal.
///
/// Arbitrary modes may pick differently every round; permanent mode fixes the
/// relative order of a pair the first time it is compared at a queue and keeps
/// it for the whole execution (scoped to that queue).
struct TieConfig {
  enum class Mode { Arbitrary, Permanent };
  enum class Strategy { SeededRandom, Scripted, FixedId };  // arbitrary mode
  enum class PermanentRule { FixedId, SeededRank };         // permanent mode

  Mode mode = Mode::Arbitrary;
  Strategy strategy = Strategy::SeededRandom;
  PermanentRule rule = PermanentRule::FixedId;

  struct Choice {
    int round = 0;
    int queue = 0;  // node index (radio) or link index (wireline)
    PacketId packet = 0;
  };
  std::vector<Choice> script;  // scripted strategy only
};

/// One queue slot: the packet plus its node-local arrival sequence number
/// (the FIFO/LIFO key). A packet that fails transmission keeps its slot.
struct QueueEntry {
  PacketId packet = 0;
  std::uint64_t arrival_seq = 0;
};

/// Selects the packet a queue offers for transmission. Owns all tie state;
/// queues are identified by an integer key so the wireline reference engine
/// and the radio engine can share identical tie decisions.
class Scheduler {
 public:
  Scheduler() = default;
  Scheduler(Policy policy, TieConfig tie, std::uint64_t seed);

  /// Unique candidate maximal under the policy, ties resolved by the tie mode;
  /// nullopt iff candidates is empty. Pure given identical tie state.
  std::optional<PacketId> select(int queue, int round, const std::vector<QueueEntry>& candidates,
                                 const std::vector<Packet>& packets);

  /// <0: a ranks above b, >0: b above a, 0: tied. No tie-breaking applied.
  int compare(const QueueEntry& a, const QueueEntry& b, const std::vector<Packet>& packets) const;

  /// Permanent-order lookup for a tied pair at a queue; the first call decides
  /// and persists, later calls return the recorded order.
  bool permanent_before(int queue, PacketId p, PacketId q);

  Policy policy() const { return policy_; }

 private:
  std::uint64_t rank_of(int queue, PacketId p);
  PacketId break_tie(int queue, int round, const std::vector<PacketId>& tied);

  Policy policy_ = Policy::Fifo;
  TieConfig tie_;
  std::uint64_t seed_ = 0;
  std::map<std::pair<int, int>, PacketId> script_;                    // (round, queue) -> packet
  std::map<std::pair<int, std::pair<PacketId, PacketId>>, bool> order_;  // (queue, lo,hi) -> lo first
  std::map<std::pair<int, PacketId>, std::uint64_t> ranks_;
};

/// Deterministic 64-bit mixer used wherever seeded choices are needed.
std::uint64_t mix64(std::uint64_t x);

}  // namespace radiosim
