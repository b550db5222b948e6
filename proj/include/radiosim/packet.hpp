#pragma once

#include <cstdint>
#include <vector>

namespace radiosim {

using PacketId = std::uint32_t;

/// One injected packet. The itinerary is fixed at injection (source routing);
/// hop_index points at the next link to traverse and never decreases.
struct Packet {
  PacketId id = 0;
  int injection_round = -1;       // its class
  std::vector<int> itinerary;     // node names, length >= 2 for a moving packet
  int hop_index = 0;              // 0..hops()
  int arrival_round = -1;         // round it entered its current queue
  std::vector<int> leave_rounds;  // round it crossed hop i, filled as known
  int delivery_round = -1;

  int hops() const { return static_cast<int>(itinerary.size()) - 1; }
  bool delivered() const { return delivery_round >= 0; }
  int current_node() const { return itinerary[hop_index]; }
  int next_hop() const { return itinerary[hop_index + 1]; }
  int remaining_hops() const { return hops() - hop_index; }
};

}  // namespace radiosim
