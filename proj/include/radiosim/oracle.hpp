#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiosim/graph.hpp"

namespace radiosim {

struct ExecutionTrace;

/// Cyclic binary transmit schedule. Row = node, column = round mod length.
/// A valid transmitter has, for every row, a column where that row alone
/// holds a 1 (the isolation property), which guarantees a collision-free
/// transmission within one cycle.
struct TransmitterArray {
  int rows = 0;
  int length = 0;
  std::vector<std::uint8_t> bits;  // row-major, rows*length

  std::uint8_t at(int row, int column) const { return bits[row * length + column]; }
  static TransmitterArray identity(int n);
  /// Rows of '0'/'1' characters, equal length.
  static TransmitterArray from_rows(const std::vector<std::string>& row_strings);
  std::vector<std::string> to_rows() const;
};

struct TransmitterVerdict {
  bool pass = false;
  std::vector<int> witness_columns;  // per row, isolated column; -1 when none
  int first_failing_row = -1;
};

/// PASS iff every row has an isolated column; witnesses returned either way.
TransmitterVerdict verify_transmitter(const TransmitterArray& array);

/// Randomized constructor, verified before returning. The isolation property
/// is seeded by a shuffled diagonal; remaining cells are filled at random.
/// Guarded to n <= 16; length must be >= n.
TransmitterArray make_greedy_transmitter(int n, int length, std::uint64_t seed);

/// One round of a scripted oracle: who may transmit, and which directed links
/// are guaranteed to be heard this round.
struct ScriptedRound {
  bool permit_all = false;
  std::vector<int> permitted;                 // sorted, used when !permit_all
  std::vector<std::pair<int, int>> up_links;  // directed (tail, head)
};

/// Per-round transmit indication. Scripted schedules repeat with the given
/// period; the implemented modes are work-conserving (everyone, every round),
/// round-robin (node round mod n) and transmitter arrays.
struct OracleSchedule {
  enum class Mode { WorkConserving, RoundRobin, Transmitter, Scripted };

  Mode mode = Mode::WorkConserving;
  TransmitterArray transmitter;      // Transmitter mode
  std::vector<ScriptedRound> script; // Scripted mode, length == period
  int period = 0;
  std::optional<int> claimed_latency;

  static OracleSchedule work_conserving();
  static OracleSchedule round_robin();
  static OracleSchedule from_transmitter(TransmitterArray array);
  static OracleSchedule scripted(std::vector<ScriptedRound> rounds);

  bool is_permitted(int node, int round, int node_count) const;
  /// All permitted nodes this round, ascending.
  std::vector<int> permitted_nodes(int round, int node_count) const;
  /// Up links this round; empty outside scripted mode.
  const std::vector<std::pair<int, int>>& up_links(int round) const;

  const ScriptedRound& scripted_round(int round) const { return script[round % period]; }
};

/// Scripted oracle where every directed link is up exactly once every
/// `latency` rounds and no two same-round links share a head; all nodes are
/// permitted. Requires max degree <= latency. Used by the stability campaigns.
OracleSchedule make_periodic_link_oracle(const NetworkGraph& graph, int latency);

std::string oracle_mode_name(OracleSchedule::Mode mode);
OracleSchedule::Mode parse_oracle_mode(const std::string& name);

struct LatencyVerdict {
  bool pass = true;
  int window_start = -1;  // first violating window
  int link_tail = -1, link_head = -1;  // link certification
  int node = -1;                       // node certification
  std::string detail;
};

/// Link hearing latency certification over a finished trace.
///
/// For every directed link e and every window of h consecutive rounds
/// throughout which e had a ready packet (a transmittable packet at its tail
/// whose next hop crosses e), the window must contain a capability event:
/// a packet heard across e, or — in scripted-links mode — e up while its
/// tail was permitted.
LatencyVerdict certify_link_latency(const ExecutionTrace& trace, int h);

/// Node hearing latency certification (the regular-oracle property): in every
/// window of h consecutive rounds throughout which the node had a
/// transmittable packet, a round must exist where the node could successfully
/// transmit on every one of its outgoing links.
LatencyVerdict certify_node_latency(const ExecutionTrace& trace, int h);

}  // namespace radiosim
