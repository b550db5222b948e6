#include "radiosim/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace radiosim {

NetworkGraph NetworkGraph::from_edges(int node_count, std::vector<std::pair<int, int>> edges) {
  if (node_count <= 0) throw std::invalid_argument("graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (auto& [u, w] : edges) {
    if (u == w) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (u < 0 || w < 0 || u >= node_count || w >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u > w) std::swap(u, w);
    if (!seen.insert({u, w}).second)
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(w));
  }
  std::sort(edges.begin(), edges.end());

  NetworkGraph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(edges);
  g.adjacency_.assign(node_count, {});
  for (const auto& [u, w] : g.edges_) {
    g.adjacency_[u].push_back(w);
    g.adjacency_[w].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());

  g.link_index_by_tail_.assign(node_count, {});
  for (int u = 0; u < node_count; ++u) {
    for (int w : g.adjacency_[u]) {
      g.link_index_by_tail_[u].push_back(static_cast<int>(g.links_.size()));
      g.links_.emplace_back(u, w);
    }
  }
  return g;
}

NetworkGraph NetworkGraph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, std::move(edges));
}

NetworkGraph NetworkGraph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return from_edges(n, std::move(edges));
}

NetworkGraph NetworkGraph::star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return from_edges(n, std::move(edges));
}

NetworkGraph NetworkGraph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return from_edges(n, std::move(edges));
}

bool NetworkGraph::has_edge(int u, int w) const {
  if (u < 0 || w < 0 || u >= node_count_ || w >= node_count_ || u == w) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), w);
}

int NetworkGraph::max_degree() const {
  int best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

int NetworkGraph::link_index(int u, int w) const {
  if (u < 0 || u >= node_count_) return -1;
  const auto& nbrs = adjacency_[u];
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), w);
  if (it == nbrs.end() || *it != w) return -1;
  return link_index_by_tail_[u][static_cast<int>(it - nbrs.begin())];
}

WirelineGraph WirelineGraph::from_links(int node_count, std::vector<std::pair<int, int>> links) {
  if (node_count <= 0) throw std::invalid_argument("wireline graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, w] : links) {
    if (u == w) throw std::invalid_argument("wireline self-loop");
    if (u < 0 || w < 0 || u >= node_count || w >= node_count)
      throw std::invalid_argument("wireline link endpoint out of range");
    if (!seen.insert({u, w}).second) throw std::invalid_argument("duplicate wireline link");
  }
  return WirelineGraph{node_count, std::move(links)};
}

std::vector<int> WirelineGraph::successors_of(int link_index) const {
  std::vector<int> out;
  const int head = links[link_index].second;
  for (int i = 0; i < static_cast<int>(links.size()); ++i)
    if (links[i].first == head) out.push_back(i);
  return out;
}

bool validate_itinerary(const NetworkGraph& graph, const std::vector<int>& path) {
  if (path.empty()) return false;
  if (path.front() < 0 || path.front() >= graph.node_count()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!graph.has_edge(path[i], path[i + 1])) return false;
  return true;
}

int longest_simple_path_length(const NetworkGraph& graph, const LongestPathOptions& options) {
  if (graph.node_count() == 0) throw std::invalid_argument("empty graph");
  if (!options.exhaustive) return graph.node_count() - 1;
  if (graph.node_count() > options.max_nodes_exhaustive)
    throw std::length_error("graph too large for exhaustive longest-path search; "
                            "select the n-1 fallback instead");

  int best = 0;
  std::vector<bool> visited(graph.node_count(), false);
  std::function<void(int, int)> dfs = [&](int node, int length) {
    best = std::max(best, length);
    for (int next : graph.neighbors(node)) {
      if (visited[next]) continue;
      visited[next] = true;
      dfs(next, length + 1);
      visited[next] = false;
    }
  };
  for (int start = 0; start < graph.node_count(); ++start) {
    visited[start] = true;
    dfs(start, 0);
    visited[start] = false;
  }
  return best;
}

}  // namespace radiosim
