#pragma once

#include <cstdint>
#include <vector>

#include "radiosim/graph.hpp"
#include "radiosim/scheduling.hpp"

namespace radiosim {

/// Minimal classical wireline executor used only to generate reference traces
/// for the equivalence transform: one queue per directed link, every link
/// forwards at most one packet per round (work conserving), packets cross one
/// link per round and become transmittable the round after they arrive.

struct WirelineInjection {
  int round = 0;
  std::vector<int> link_path;  // link indices, consecutive links composable
};

struct WirelineConfig {
  WirelineGraph graph;
  std::vector<WirelineInjection> injections;
  Policy policy = Policy::Fifo;
  TieConfig tie;
  int horizon = 0;
  std::uint64_t seed = 0;
};

struct WirelineMove {
  PacketId packet = 0;
  int from_link = -1;
  int to_link = -1;  // -1: delivered
};

struct WirelineRound {
  int round = -1;
  std::vector<PacketId> injected;
  std::vector<WirelineMove> moves;
  std::vector<int> queue_sizes;  // per link, end of round
  long long q_total = 0;
};

struct WirelinePacket {
  PacketId id = 0;
  int injection_round = -1;
  std::vector<int> link_path;
  std::vector<int> leave_rounds;
  int delivery_round = -1;
};

struct WirelineTrace {
  WirelineGraph graph;
  Policy policy = Policy::Fifo;
  int horizon = 0;
  std::vector<WirelineRound> rounds;
  std::vector<WirelinePacket> packets;

  long long max_q_total() const;
};

WirelineTrace run_wireline(const WirelineConfig& config);

}  // namespace radiosim
