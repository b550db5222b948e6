#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radiosim/graph.hpp"
#include "radiosim/oracle.hpp"
#include "radiosim/packet.hpp"
#include "radiosim/scheduling.hpp"

namespace radiosim {

/// How transmissions are coordinated with scheduling.
enum class HearingMode { Proactive, Reactive };

/// How transmission success is resolved.
///  - ScriptedLinks: an attempt succeeds iff its link is in the round's up set.
///  - RadioCollision: receiver hears iff the sender is its only transmitting
///    neighbor and the receiver itself is not transmitting (half duplex).
///  - InterferenceFree: every attempt is heard; used for the wireline
///    equivalence runs, where a node may accept several packets in one round.
enum class SuccessModel { ScriptedLinks, RadioCollision, InterferenceFree };

HearingMode parse_hearing_mode(const std::string& name);
std::string hearing_mode_name(HearingMode mode);
SuccessModel parse_success_model(const std::string& name);
std::string success_model_name(SuccessModel model);

struct AttemptEvent {
  int node = -1;
  PacketId packet = 0;
  int to = -1;
};

struct HeardEvent {
  int receiver = -1;
  int sender = -1;
  PacketId packet = 0;
};

struct RoundRecord {
  int round = -1;
  std::vector<AttemptEvent> attempts;
  std::vector<HeardEvent> heard;        // intended-recipient hearings
  std::vector<int> collision_receivers; // radio mode only
  std::vector<PacketId> injected;
  std::vector<PacketId> delivered;
  std::vector<int> queue_sizes;         // end of round, per node
  long long q_total = 0;
};

struct PacketSummary {
  PacketId id = 0;
  int injection_round = -1;
  std::vector<int> itinerary;
  std::vector<int> leave_rounds;
  int delivery_round = -1;
};

/// Full record of one execution. Carries enough of the configuration to
/// recompute oracle indications and per-round queue contents (see
/// TraceReplayer), so certification and trace comparison need no extra state.
struct ExecutionTrace {
  NetworkGraph graph;
  Policy policy = Policy::Fifo;
  HearingMode hearing = HearingMode::Reactive;
  SuccessModel success = SuccessModel::RadioCollision;
  OracleSchedule oracle;
  std::uint64_t seed = 0;
  int horizon = 0;

  std::vector<RoundRecord> rounds;
  std::vector<PacketSummary> packets;  // indexed by packet id

  long long q_at(int round) const { return rounds[round].q_total; }
  long long max_q_total() const;
  long long max_queue_size() const;
  /// Max rounds-in-system over delivered packets and still-queued packets.
  long long max_delay() const;
  long long total_delivered() const;

  /// Line-delimited records: one meta line, one line per round, then one line
  /// per packet. Byte-stable for identical runs.
  void write_jsonl(std::ostream& out) const;
  std::string to_jsonl() const;
  /// CSV: round, Q_total, then one column per node.
  void write_metrics_csv(std::ostream& out) const;
};

/// 64-bit FNV-1a, used to compare serialized traces for determinism checks.
std::uint64_t fnv1a64(const std::string& bytes);

/// Replays a trace round by round, reconstructing queue contents.
///
/// For round t, after step(): queue contents as seen by the scheduler (this
/// round's injections included), with per-packet transmittable flags
/// (arrival before t), then the end-of-round contents after heard packets
/// moved. Keeps certification and equivalence comparison independent of
/// engine internals.
class TraceReplayer {
 public:
  explicit TraceReplayer(const ExecutionTrace& trace);

  bool done() const { return next_round_ >= static_cast<int>(trace_.rounds.size()); }
  /// Processes the next round; returns its index.
  int step();

  int round() const { return next_round_ - 1; }
  /// Directed link indices with a ready packet during the scheduling phase.
  const std::vector<int>& ready_links() const { return ready_links_; }
  /// Nodes holding at least one transmittable packet during scheduling.
  const std::vector<std::uint8_t>& ready_nodes() const { return ready_nodes_; }
  /// End-of-round queue contents, per node, in queue order.
  const std::vector<std::vector<PacketId>>& queues() const { return queues_; }

 private:
  const ExecutionTrace& trace_;
  int next_round_ = 0;
  std::vector<std::vector<PacketId>> queues_;
  std::vector<int> arrival_round_;
  std::vector<int> hop_index_;
  std::vector<int> ready_links_;
  std::vector<std::uint8_t> ready_nodes_;
};

}  // namespace radiosim
