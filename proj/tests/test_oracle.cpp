#include "doctest.h"

#include <stdexcept>

#include "radiosim/engine.hpp"
#include "radiosim/oracle.hpp"

using namespace radiosim;

TEST_CASE("round robin permits node round mod n") {
  const auto rr = OracleSchedule::round_robin();
  CHECK(rr.is_permitted(1, 7, 3));
  CHECK_FALSE(rr.is_permitted(0, 7, 3));
  CHECK(rr.permitted_nodes(7, 3) == std::vector<int>{1});
}

TEST_CASE("work conserving permits everyone") {
  const auto wc = OracleSchedule::work_conserving();
  CHECK(wc.permitted_nodes(13, 4) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("transmitter indication reads the cyclic array") {
  const auto oracle = OracleSchedule::from_transmitter(TransmitterArray::identity(3));
  CHECK(oracle.permitted_nodes(4, 3) == std::vector<int>{1});
}

TEST_CASE("round robin coincides with the identity transmitter") {
  for (int n : {1, 2, 3, 5}) {
    const auto rr = OracleSchedule::round_robin();
    const auto id = OracleSchedule::from_transmitter(TransmitterArray::identity(n));
    for (int round = 0; round < 3 * n; ++round)
      CHECK(rr.permitted_nodes(round, n) == id.permitted_nodes(round, n));
  }
}

TEST_CASE("verify_transmitter: identity passes with diagonal witnesses") {
  for (int n : {1, 2, 5, 8}) {
    const auto verdict = verify_transmitter(TransmitterArray::identity(n));
    CHECK(verdict.pass);
    for (int r = 0; r < n; ++r) CHECK(verdict.witness_columns[r] == r);
  }
}

TEST_CASE("verify_transmitter: all-ones fails at row 0") {
  const auto verdict = verify_transmitter(TransmitterArray::from_rows({"11", "11"}));
  CHECK_FALSE(verdict.pass);
  CHECK(verdict.first_failing_row == 0);
}

TEST_CASE("a 3-node length-11 constructed transmitter passes with witnesses within a cycle") {
  const auto array = make_greedy_transmitter(3, 11, 20240601);
  const auto verdict = verify_transmitter(array);
  REQUIRE(verdict.pass);
  for (int witness : verdict.witness_columns) {
    CHECK(witness >= 0);
    CHECK(witness < 11);
  }
}

TEST_CASE("greedy transmitters verify for n up to 8 at several lengths") {
  for (int n = 1; n <= 8; ++n)
    for (int length : {n, n + 3, 2 * n})
      CHECK(verify_transmitter(make_greedy_transmitter(n, length, 97 * n + length)).pass);
  CHECK_THROWS_AS(make_greedy_transmitter(17, 20, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_greedy_transmitter(4, 3, 1), std::invalid_argument);
}

TEST_CASE("transmitter rows parse and serialize") {
  const auto array = TransmitterArray::from_rows({"010", "101"});
  CHECK(array.rows == 2);
  CHECK(array.length == 3);
  CHECK(array.to_rows() == std::vector<std::string>{"010", "101"});
  CHECK_THROWS_AS(TransmitterArray::from_rows({"01", "011"}), std::invalid_argument);
  CHECK_THROWS_AS(TransmitterArray::from_rows({"0x"}), std::invalid_argument);
}

TEST_CASE("periodic link oracle: every link up once per period, heads distinct") {
  const auto g = NetworkGraph::star(4);
  const auto oracle = make_periodic_link_oracle(g, 3);
  CHECK(oracle.period == 3);
  int total_up = 0;
  for (int phase = 0; phase < 3; ++phase) {
    const auto& up = oracle.up_links(phase);
    total_up += static_cast<int>(up.size());
    std::vector<int> heads;
    for (const auto& [u, w] : up) heads.push_back(w);
    std::sort(heads.begin(), heads.end());
    CHECK(std::adjacent_find(heads.begin(), heads.end()) == heads.end());
  }
  CHECK(total_up == g.link_count());
  CHECK_THROWS_AS(make_periodic_link_oracle(NetworkGraph::star(5), 3), std::invalid_argument);
}

TEST_CASE("scripted oracle rejects up links with unpermitted tails") {
  ScriptedRound r;
  r.permitted = {1};
  r.up_links = {{0, 1}};
  CHECK_THROWS_AS(OracleSchedule::scripted({r}), std::invalid_argument);
}

namespace {

// single saturated link under round robin: node 0 holds a long backlog to 1
ExecutionTrace saturated_round_robin(int n) {
  ExecutionConfig c;
  c.graph = NetworkGraph::path(n);
  c.adversary.strategy = AdversarySpec::Strategy::Scripted;
  for (int i = 0; i < 40; ++i) c.adversary.script.push_back({0, {0, 1}});
  c.policy = Policy::Fifo;
  c.oracle = OracleSchedule::round_robin();
  c.hearing = HearingMode::Reactive;
  c.success = SuccessModel::RadioCollision;
  c.horizon = 30 * n;
  return run_execution(c);
}

}  // anonymous namespace

TEST_CASE("round robin certifies at h=n and fails at h=n-1 when saturated") {
  for (int n : {3, 4, 6}) {
    const auto trace = saturated_round_robin(n);
    CHECK(certify_link_latency(trace, n).pass);
    CHECK_FALSE(certify_link_latency(trace, n - 1).pass);
    CHECK(certify_node_latency(trace, n).pass);
    CHECK_FALSE(certify_node_latency(trace, n - 1).pass);
  }
}

TEST_CASE("empty traces certify vacuously") {
  ExecutionConfig c;
  c.graph = NetworkGraph::path(3);
  c.oracle = OracleSchedule::round_robin();
  c.hearing = HearingMode::Reactive;
  c.success = SuccessModel::RadioCollision;
  c.horizon = 40;
  const auto trace = run_execution(c);
  CHECK(certify_link_latency(trace, 1).pass);
  CHECK(certify_node_latency(trace, 1).pass);
}

TEST_CASE("node certification passing h implies link certification within h * degree") {
  for (int n : {3, 5}) {
    const auto trace = saturated_round_robin(n);
    REQUIRE(certify_node_latency(trace, n).pass);
    CHECK(certify_link_latency(trace, n * trace.graph.max_degree()).pass);
  }
}

TEST_CASE("alternating two links: links certify at 2, the node never does") {
  // node 0's links to 1 and 2 are up on alternating rounds, never together;
  // each link has latency 2 but no round lets node 0 use an arbitrary link
  std::vector<ScriptedRound> rounds(2);
  rounds[0].permit_all = rounds[1].permit_all = true;
  rounds[0].up_links = {{0, 1}};
  rounds[1].up_links = {{0, 2}};
  ExecutionConfig c;
  c.graph = NetworkGraph::star(3);
  c.adversary.strategy = AdversarySpec::Strategy::Scripted;
  for (int i = 0; i < 12; ++i) {
    c.adversary.script.push_back({0, {0, 1}});
    c.adversary.script.push_back({0, {0, 2}});
  }
  c.policy = Policy::Fifo;
  c.oracle = OracleSchedule::scripted(rounds);
  c.hearing = HearingMode::Reactive;
  c.success = SuccessModel::ScriptedLinks;
  c.horizon = 60;
  const auto trace = run_execution(c);
  CHECK(certify_link_latency(trace, 2).pass);
  CHECK_FALSE(certify_node_latency(trace, 2).pass);
  CHECK_FALSE(certify_node_latency(trace, 8).pass);
}
