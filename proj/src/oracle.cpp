#include "radiosim/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "radiosim/scheduling.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

TransmitterArray TransmitterArray::identity(int n) {
  TransmitterArray a;
  a.rows = n;
  a.length = n;
  a.bits.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) a.bits[i * n + i] = 1;
  return a;
}

TransmitterArray TransmitterArray::from_rows(const std::vector<std::string>& row_strings) {
  if (row_strings.empty()) throw std::invalid_argument("empty transmitter array");
  TransmitterArray a;
  a.rows = static_cast<int>(row_strings.size());
  a.length = static_cast<int>(row_strings.front().size());
  if (a.length == 0) throw std::invalid_argument("empty transmitter row");
  a.bits.reserve(static_cast<std::size_t>(a.rows) * a.length);
  for (const auto& row : row_strings) {
    if (static_cast<int>(row.size()) != a.length)
      throw std::invalid_argument("transmitter rows differ in length");
    for (char c : row) {
      if (c != '0' && c != '1') throw std::invalid_argument("transmitter rows must be 0/1");
      a.bits.push_back(c == '1' ? 1 : 0);
    }
  }
  return a;
}

std::vector<std::string> TransmitterArray::to_rows() const {
  std::vector<std::string> out;
  out.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    std::string row(length, '0');
    for (int c = 0; c < length; ++c)
      if (at(r, c)) row[c] = '1';
    out.push_back(std::move(row));
  }
  return out;
}

TransmitterVerdict verify_transmitter(const TransmitterArray& array) {
  TransmitterVerdict v;
  v.witness_columns.assign(array.rows, -1);
  for (int c = 0; c < array.length; ++c) {
    int ones = 0;
    int row = -1;
    for (int r = 0; r < array.rows; ++r) {
      if (array.at(r, c)) {
        ++ones;
        row = r;
      }
    }
    if (ones == 1 && v.witness_columns[row] < 0) v.witness_columns[row] = c;
  }
  v.pass = true;
  for (int r = 0; r < array.rows; ++r) {
    if (v.witness_columns[r] < 0) {
      v.pass = false;
      v.first_failing_row = r;
      break;
    }
  }
  return v;
}

TransmitterArray make_greedy_transmitter(int n, int length, std::uint64_t seed) {
  if (n < 1 || n > 16) throw std::invalid_argument("transmitter constructor supports 1..16 nodes");
  if (length < n) throw std::invalid_argument("transmitter length must be >= node count");

  std::vector<int> columns(length);
  std::iota(columns.begin(), columns.end(), 0);
  for (int i = length - 1; i > 0; --i) {
    const int j = static_cast<int>(mix64(seed ^ (0xa5a5ULL * i)) % (i + 1));
    std::swap(columns[i], columns[j]);
  }

  TransmitterArray a;
  a.rows = n;
  a.length = length;
  a.bits.assign(static_cast<std::size_t>(n) * length, 0);
  std::vector<std::uint8_t> reserved(length, 0);
  for (int r = 0; r < n; ++r) {
    a.bits[r * length + columns[r]] = 1;  // isolation column for row r
    reserved[columns[r]] = 1;
  }
  for (int c = 0; c < length; ++c) {
    if (reserved[c]) continue;
    for (int r = 0; r < n; ++r)
      a.bits[r * length + c] = mix64(seed ^ (static_cast<std::uint64_t>(r) << 32 | c)) & 1;
  }

  if (!verify_transmitter(a).pass) throw std::logic_error("constructed transmitter failed verification");
  return a;
}

OracleSchedule OracleSchedule::work_conserving() {
  OracleSchedule s;
  s.mode = Mode::WorkConserving;
  return s;
}

OracleSchedule OracleSchedule::round_robin() {
  OracleSchedule s;
  s.mode = Mode::RoundRobin;
  return s;
}

OracleSchedule OracleSchedule::from_transmitter(TransmitterArray array) {
  OracleSchedule s;
  s.mode = Mode::Transmitter;
  s.claimed_latency = array.length;
  s.transmitter = std::move(array);
  return s;
}

OracleSchedule OracleSchedule::scripted(std::vector<ScriptedRound> rounds) {
  if (rounds.empty()) throw std::invalid_argument("scripted oracle needs at least one round");
  OracleSchedule s;
  s.mode = Mode::Scripted;
  s.period = static_cast<int>(rounds.size());
  for (auto& r : rounds) {
    std::sort(r.permitted.begin(), r.permitted.end());
    for (const auto& [u, w] : r.up_links) {
      const bool tail_ok = r.permit_all ||
          std::binary_search(r.permitted.begin(), r.permitted.end(), u);
      if (!tail_ok)
        throw std::invalid_argument("scripted up link with unpermitted tail node " + std::to_string(u));
      (void)w;
    }
  }
  s.script = std::move(rounds);
  return s;
}

bool OracleSchedule::is_permitted(int node, int round, int node_count) const {
  switch (mode) {
    case Mode::WorkConserving:
      return true;
    case Mode::RoundRobin:
      return node == round % node_count;
    case Mode::Transmitter:
      if (node >= transmitter.rows) return false;
      return transmitter.at(node, round % transmitter.length) != 0;
    case Mode::Scripted: {
      const ScriptedRound& r = scripted_round(round);
      if (r.permit_all) return true;
      return std::binary_search(r.permitted.begin(), r.permitted.end(), node);
    }
  }
  return false;
}

std::vector<int> OracleSchedule::permitted_nodes(int round, int node_count) const {
  std::vector<int> out;
  for (int v = 0; v < node_count; ++v)
    if (is_permitted(v, round, node_count)) out.push_back(v);
  return out;
}

const std::vector<std::pair<int, int>>& OracleSchedule::up_links(int round) const {
  static const std::vector<std::pair<int, int>> kEmpty;
  if (mode != Mode::Scripted) return kEmpty;
  return scripted_round(round).up_links;
}

OracleSchedule make_periodic_link_oracle(const NetworkGraph& graph, int latency) {
  if (latency < 1) throw std::invalid_argument("latency must be positive");
  if (graph.max_degree() > latency)
    throw std::invalid_argument("periodic link oracle needs max degree <= latency");

  std::vector<ScriptedRound> rounds(latency);
  for (auto& r : rounds) r.permit_all = true;
  std::vector<int> next_color(graph.node_count(), 0);
  for (const auto& [tail, head] : graph.directed_links()) {
    const int color = next_color[head]++;  // in-links of a head spread over distinct rounds
    rounds[color].up_links.emplace_back(tail, head);
  }
  auto schedule = OracleSchedule::scripted(std::move(rounds));
  schedule.claimed_latency = latency;
  return schedule;
}

std::string oracle_mode_name(OracleSchedule::Mode mode) {
  switch (mode) {
    case OracleSchedule::Mode::WorkConserving: return "work_conserving";
    case OracleSchedule::Mode::RoundRobin: return "round_robin";
    case OracleSchedule::Mode::Transmitter: return "transmitter";
    case OracleSchedule::Mode::Scripted: return "scripted";
  }
  return "?";
}

OracleSchedule::Mode parse_oracle_mode(const std::string& name) {
  if (name == "work_conserving") return OracleSchedule::Mode::WorkConserving;
  if (name == "round_robin") return OracleSchedule::Mode::RoundRobin;
  if (name == "transmitter") return OracleSchedule::Mode::Transmitter;
  if (name == "scripted") return OracleSchedule::Mode::Scripted;
  throw std::invalid_argument("unknown oracle mode '" + name + "'");
}

namespace {

// capable[link][t] / capable[node][t] grids for the certifiers.
std::vector<std::vector<std::uint8_t>> link_capability_grid(const ExecutionTrace& trace) {
  const int links = trace.graph.link_count();
  const int horizon = static_cast<int>(trace.rounds.size());
  std::vector<std::vector<std::uint8_t>> capable(links, std::vector<std::uint8_t>(horizon, 0));
  for (int t = 0; t < horizon; ++t) {
    for (const auto& h : trace.rounds[t].heard) {
      const int link = trace.graph.link_index(h.sender, h.receiver);
      if (link >= 0) capable[link][t] = 1;
    }
    if (trace.success == SuccessModel::ScriptedLinks) {
      for (const auto& [u, w] : trace.oracle.up_links(t)) {
        if (!trace.oracle.is_permitted(u, t, trace.graph.node_count())) continue;
        const int link = trace.graph.link_index(u, w);
        if (link >= 0) capable[link][t] = 1;
      }
    }
  }
  return capable;
}

std::vector<std::vector<std::uint8_t>> node_capability_grid(const ExecutionTrace& trace) {
  const int n = trace.graph.node_count();
  const int horizon = static_cast<int>(trace.rounds.size());
  std::vector<std::vector<std::uint8_t>> capable(n, std::vector<std::uint8_t>(horizon, 0));
  for (int t = 0; t < horizon; ++t) {
    std::vector<std::uint8_t> attempting(n, 0);
    for (const auto& a : trace.rounds[t].attempts) attempting[a.node] = 1;
    for (int x = 0; x < n; ++x) {
      if (!trace.oracle.is_permitted(x, t, n)) continue;
      bool all_links = true;
      switch (trace.success) {
        case SuccessModel::InterferenceFree:
          break;
        case SuccessModel::ScriptedLinks: {
          const auto& up = trace.oracle.up_links(t);
          for (int w : trace.graph.neighbors(x)) {
            if (std::find(up.begin(), up.end(), std::make_pair(x, w)) == up.end()) {
              all_links = false;
              break;
            }
          }
          break;
        }
        case SuccessModel::RadioCollision:
          // every neighbor must be silent and free of other transmitting neighbors
          for (int w : trace.graph.neighbors(x)) {
            if (attempting[w]) {
              all_links = false;
              break;
            }
            for (int y : trace.graph.neighbors(w)) {
              if (y != x && attempting[y]) {
                all_links = false;
                break;
              }
            }
            if (!all_links) break;
          }
          break;
      }
      capable[x][t] = all_links ? 1 : 0;
    }
  }
  return capable;
}

// Scans one ready/capable pair of series for an h-window that is ready
// throughout and free of capability events. Returns the first window start,
// or -1 when none exists.
int first_violation(const std::vector<std::uint8_t>& ready, const std::vector<std::uint8_t>& capable,
                    int h) {
  const int horizon = static_cast<int>(ready.size());
  int run = 0;
  int last_capable = -1;
  for (int t = 0; t < horizon; ++t) {
    if (capable[t]) last_capable = t;
    run = ready[t] ? run + 1 : 0;
    if (run >= h && last_capable < t - h + 1) return t - h + 1;
  }
  return -1;
}

}  // namespace

LatencyVerdict certify_link_latency(const ExecutionTrace& trace, int h) {
  if (h < 1) throw std::invalid_argument("latency must be positive");
  const int links = trace.graph.link_count();
  const int horizon = static_cast<int>(trace.rounds.size());

  std::vector<std::vector<std::uint8_t>> ready(links, std::vector<std::uint8_t>(horizon, 0));
  TraceReplayer replay(trace);
  while (!replay.done()) {
    const int t = replay.step();
    for (int link : replay.ready_links()) ready[link][t] = 1;
  }
  const auto capable = link_capability_grid(trace);

  LatencyVerdict verdict;
  int best_start = -1, best_link = -1;
  for (int link = 0; link < links; ++link) {
    const int start = first_violation(ready[link], capable[link], h);
    if (start >= 0 && (best_start < 0 || start < best_start)) {
      best_start = start;
      best_link = link;
    }
  }
  if (best_start >= 0) {
    verdict.pass = false;
    verdict.window_start = best_start;
    verdict.link_tail = trace.graph.directed_links()[best_link].first;
    verdict.link_head = trace.graph.directed_links()[best_link].second;
    verdict.detail = "link (" + std::to_string(verdict.link_tail) + "," +
                     std::to_string(verdict.link_head) + ") ready through rounds [" +
                     std::to_string(best_start) + "," + std::to_string(best_start + h - 1) +
                     "] with no capability";
  }
  return verdict;
}

LatencyVerdict certify_node_latency(const ExecutionTrace& trace, int h) {
  if (h < 1) throw std::invalid_argument("latency must be positive");
  const int n = trace.graph.node_count();
  const int horizon = static_cast<int>(trace.rounds.size());

  std::vector<std::vector<std::uint8_t>> ready(n, std::vector<std::uint8_t>(horizon, 0));
  TraceReplayer replay(trace);
  while (!replay.done()) {
    const int t = replay.step();
    for (int x = 0; x < n; ++x)
      if (replay.ready_nodes()[x]) ready[x][t] = 1;
  }
  const auto capable = node_capability_grid(trace);

  LatencyVerdict verdict;
  int best_start = -1, best_node = -1;
  for (int x = 0; x < n; ++x) {
    const int start = first_violation(ready[x], capable[x], h);
    if (start >= 0 && (best_start < 0 || start < best_start)) {
      best_start = start;
      best_node = x;
    }
  }
  if (best_start >= 0) {
    verdict.pass = false;
    verdict.window_start = best_start;
    verdict.node = best_node;
    verdict.detail = "node " + std::to_string(best_node) + " ready through rounds [" +
                     std::to_string(best_start) + "," + std::to_string(best_start + h - 1) +
                     "] with no all-link capability";
  }
  return verdict;
}

}  // namespace radiosim
