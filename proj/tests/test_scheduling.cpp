#include "doctest.h"

#include <stdexcept>

#include "radiosim/scheduling.hpp"

using namespace radiosim;

namespace {

Packet make_packet(PacketId id, int injection_round, std::vector<int> itinerary, int hop = 0) {
  Packet p;
  p.id = id;
  p.injection_round = injection_round;
  p.itinerary = std::move(itinerary);
  p.hop_index = hop;
  return p;
}

}  // anonymous namespace

TEST_CASE("SIS picks the newest injection, LIS the oldest") {
  std::vector<Packet> packets{make_packet(0, 3, {0, 1}), make_packet(1, 7, {0, 1})};
  std::vector<QueueEntry> queue{{0, 0}, {1, 1}};
  TieConfig tie;
  Scheduler sis(Policy::Sis, tie, 1);
  Scheduler lis(Policy::Lis, tie, 1);
  CHECK(*sis.select(0, 10, queue, packets) == 1);
  CHECK(*lis.select(0, 10, queue, packets) == 0);
}

TEST_CASE("single candidate wins under every policy") {
  std::vector<Packet> packets{make_packet(0, 3, {0, 1})};
  std::vector<QueueEntry> queue{{0, 0}};
  for (Policy policy : {Policy::Fifo, Policy::Lifo, Policy::Sis, Policy::Lis, Policy::Ntg,
                        Policy::Ftg, Policy::Nts, Policy::Ffs}) {
    Scheduler s(policy, TieConfig{}, 0);
    CHECK(*s.select(0, 1, queue, packets) == 0);
  }
  Scheduler s(Policy::Sis, TieConfig{}, 0);
  CHECK_FALSE(s.select(0, 1, {}, packets).has_value());
}

TEST_CASE("itinerary-position policies rank by assigned path, not graph distance") {
  // packet 0: 1 hop remaining of 3; packet 1: 2 remaining of 2
  std::vector<Packet> packets{make_packet(0, 0, {0, 1, 2, 3}, 2), make_packet(1, 0, {2, 1, 0}, 0)};
  std::vector<QueueEntry> queue{{0, 0}, {1, 1}};
  CHECK(*Scheduler(Policy::Ntg, {}, 0).select(0, 1, queue, packets) == 0);  // fewest to go
  CHECK(*Scheduler(Policy::Ftg, {}, 0).select(0, 1, queue, packets) == 1);
  CHECK(*Scheduler(Policy::Nts, {}, 0).select(0, 1, queue, packets) == 1);  // fewest traversed
  CHECK(*Scheduler(Policy::Ffs, {}, 0).select(0, 1, queue, packets) == 0);
}

TEST_CASE("FIFO and LIFO use queue arrival order") {
  std::vector<Packet> packets{make_packet(0, 5, {0, 1}), make_packet(1, 5, {0, 1})};
  std::vector<QueueEntry> queue{{1, 4}, {0, 9}};  // packet 1 arrived first
  CHECK(*Scheduler(Policy::Fifo, {}, 0).select(0, 1, queue, packets) == 1);
  CHECK(*Scheduler(Policy::Lifo, {}, 0).select(0, 1, queue, packets) == 0);
}

TEST_CASE("scripted ties return the scripted choice when it is a candidate") {
  std::vector<Packet> packets{make_packet(0, 5, {0, 1}), make_packet(1, 5, {0, 2}),
                              make_packet(2, 9, {0, 1})};
  TieConfig tie;
  tie.strategy = TieConfig::Strategy::Scripted;
  tie.script = {{4, 0, 1}, {5, 0, 0}};
  Scheduler s(Policy::Lis, tie, 0);
  std::vector<QueueEntry> tied{{0, 0}, {1, 1}};
  CHECK(*s.select(0, 4, tied, packets) == 1);
  CHECK(*s.select(0, 5, tied, packets) == 0);
  // scripted choice absent from candidates falls back to lowest id
  std::vector<QueueEntry> without{{0, 0}, {2, 2}};
  CHECK(*s.select(0, 4, without, packets) == 0);
}

TEST_CASE("select is pure: identical inputs give identical picks") {
  std::vector<Packet> packets{make_packet(0, 5, {0, 1}), make_packet(1, 5, {0, 2})};
  TieConfig tie;
  tie.strategy = TieConfig::Strategy::SeededRandom;
  Scheduler s(Policy::Sis, tie, 99);
  std::vector<QueueEntry> queue{{0, 0}, {1, 1}};
  const auto first = s.select(0, 7, queue, packets);
  for (int i = 0; i < 10; ++i) CHECK(s.select(0, 7, queue, packets) == first);
}

TEST_CASE("permanent order: first comparison fixes the pair at that queue") {
  TieConfig tie;
  tie.mode = TieConfig::Mode::Permanent;
  tie.rule = TieConfig::PermanentRule::SeededRank;
  Scheduler s(Policy::Sis, tie, 1234);
  const bool first = s.permanent_before(3, 10, 11);
  for (int i = 0; i < 20; ++i) {
    CHECK(s.permanent_before(3, 10, 11) == first);
    CHECK(s.permanent_before(3, 11, 10) == !first);
  }
}

TEST_CASE("permanent order is scoped per queue") {
  TieConfig tie;
  tie.mode = TieConfig::Mode::Permanent;
  tie.rule = TieConfig::PermanentRule::SeededRank;
  // with enough queues, some pair ordering differs between queues under seeded ranks
  bool any_differs = false;
  Scheduler s(Policy::Sis, tie, 77);
  const bool at_queue0 = s.permanent_before(0, 1, 2);
  for (int queue = 1; queue < 64 && !any_differs; ++queue)
    any_differs = s.permanent_before(queue, 1, 2) != at_queue0;
  CHECK(any_differs);
}

TEST_CASE("fixed_id permanent rule orders by id") {
  TieConfig tie;
  tie.mode = TieConfig::Mode::Permanent;
  tie.rule = TieConfig::PermanentRule::FixedId;
  Scheduler s(Policy::Sis, tie, 0);
  CHECK(s.permanent_before(0, 2, 5));
  CHECK_FALSE(s.permanent_before(0, 5, 2));
  std::vector<Packet> packets;
  for (PacketId id = 0; id < 8; ++id) packets.push_back(make_packet(id, 1, {0, 1}));
  std::vector<QueueEntry> tied{{4, 0}, {2, 1}, {7, 2}};
  CHECK(*s.select(0, 3, tied, packets) == 2);
}
