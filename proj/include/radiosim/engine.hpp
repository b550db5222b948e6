#pragma once

#include <cstdint>

#include "radiosim/adversary.hpp"
#include "radiosim/graph.hpp"
#include "radiosim/oracle.hpp"
#include "radiosim/scheduling.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

/// A full protocol instance: the (oracle, scheduler, hearing control) triple
/// plus the network, adversary and run parameters.
struct ExecutionConfig {
  NetworkGraph graph;
  AdversarySpec adversary;
  Policy policy = Policy::Sis;
  TieConfig tie;
  OracleSchedule oracle;
  HearingMode hearing = HearingMode::Reactive;
  SuccessModel success = SuccessModel::RadioCollision;
  int horizon = 0;
  std::uint64_t seed = 0;
};

ExecutionConfig config_from_scripted_scenario(const ScriptedScenario& scenario,
                                              SuccessModel success = SuccessModel::ScriptedLinks,
                                              HearingMode hearing = HearingMode::Reactive);

/// Runs the round-synchronous execution. Each round, in order: adversary
/// injections enter queues (transmittable from the next round), the oracle
/// indicates transmitters, the hearing-control/scheduling phase picks at most
/// one packet per node, successes are resolved, and queues are updated.
/// Deterministic given the config; throws std::logic_error on any internal
/// invariant breach (packet conservation, single port, proactive success).
ExecutionTrace run_execution(const ExecutionConfig& config);

}  // namespace radiosim
