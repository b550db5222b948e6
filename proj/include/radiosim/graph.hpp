#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radiosim {

/// Simple undirected graph of transceiver nodes, named 0..n-1.
///
/// Each undirected edge stands for two independent directed links. Directed
/// links get stable indices (lexicographic over ordered pairs) used by traces,
/// oracles and the wireline transform.
class NetworkGraph {
 public:
  NetworkGraph() = default;

  /// Validates: names in range, no self-loops, no duplicate edges.
  static NetworkGraph from_edges(int node_count, std::vector<std::pair<int, int>> edges);

  static NetworkGraph path(int node_count);
  static NetworkGraph cycle(int node_count);
  static NetworkGraph star(int node_count);  // node 0 is the center
  static NetworkGraph complete(int node_count);

  int node_count() const { return node_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  bool has_edge(int u, int w) const;
  int max_degree() const;

  /// Ordered adjacent pairs, lexicographic. Two per undirected edge.
  const std::vector<std::pair<int, int>>& directed_links() const { return links_; }
  int link_count() const { return static_cast<int>(links_.size()); }
  /// Index of directed link (u,w); -1 when not adjacent.
  int link_index(int u, int w) const;

 private:
  int node_count_ = 0;
  std::vector<std::pair<int, int>> edges_;           // u < w, sorted
  std::vector<std::vector<int>> adjacency_;          // sorted
  std::vector<std::pair<int, int>> links_;           // directed, lexicographic
  std::vector<std::vector<int>> link_index_by_tail_; // parallel to adjacency_
};

/// Directed graph used only as input to the equivalence transform.
struct WirelineGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> links;  // directed (u,w), u != w, unique

  static WirelineGraph from_links(int node_count, std::vector<std::pair<int, int>> links);
  /// Indices of links f with tail(f) == head(link_index), ascending.
  std::vector<int> successors_of(int link_index) const;
};

/// True iff every consecutive pair of the path is an edge. Revisits allowed.
bool validate_itinerary(const NetworkGraph& graph, const std::vector<int>& path);

struct LongestPathOptions {
  bool exhaustive = true;        // false: return the n-1 upper bound
  int max_nodes_exhaustive = 12; // size guard for the exhaustive search
};

/// Number of edges on the longest simple path, each undirected edge read as
/// two directed links. Exhaustive by default; throws std::length_error when
/// the graph exceeds the size guard, unless the fallback bound is selected.
int longest_simple_path_length(const NetworkGraph& graph, const LongestPathOptions& options = {});

}  // namespace radiosim
