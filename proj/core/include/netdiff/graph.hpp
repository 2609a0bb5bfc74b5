#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netdiff {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Undirected edge with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph in CSR form. Neighbour lists are
// sorted ascending; edges are sorted by (u, v). Every node carries an
// external label (defaults to its decimal index); coordinates and block
// memberships are optional attributes.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {adjacent_edge_.data() + offsets_[v],
            adjacent_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const { return edge_id(u, v).has_value(); }
  std::optional<EdgeId> edge_id(NodeId u, NodeId v) const;
  std::optional<double> weight(NodeId u, NodeId v) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  bool has_coordinates() const noexcept { return !coordinates_.empty(); }
  const std::vector<Point>& coordinates() const noexcept { return coordinates_; }
  const Point& coordinate(NodeId v) const { return coordinates_.at(v); }

  bool has_blocks() const noexcept { return !blocks_.empty(); }
  const std::vector<std::uint32_t>& blocks() const noexcept { return blocks_; }

  // Copy of this graph with coordinates attached (one per node).
  Graph with_coordinates(std::vector<Point> coordinates) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ &&
           a.coordinates_ == b.coordinates_ && a.blocks_ == b.blocks_;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacent_edge_;
  std::vector<Point> coordinates_;
  std::vector<std::uint32_t> blocks_;
  std::unordered_map<std::string, NodeId> index_;
};

// Accumulates nodes and edges, then freezes them into a Graph.
//
// Adding an edge twice keeps the last weight. Self-loops and negative
// weights are rejected with netdiff::Error.
class GraphBuilder {
 public:
  // `node_count` unlabeled nodes, labeled "0".."n-1".
  explicit GraphBuilder(std::size_t node_count = 0);

  // Appends a node. An empty label means "use the index".
  NodeId add_node(std::string label = {});
  // Returns the node with this label, creating it if needed.
  NodeId node(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;

  void add_edge(NodeId u, NodeId v, double weight = 1.0);

  void set_coordinates(std::vector<Point> coordinates);
  void set_blocks(std::vector<std::uint32_t> blocks);

  std::size_t node_count() const noexcept { return labels_.size(); }

  Graph build() &&;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> pending_;  // insertion order, duplicates allowed
  std::vector<Point> coordinates_;
  std::vector<std::uint32_t> blocks_;
};

// Graph on `n` nodes with the given (u, v) pairs, unit weights.
Graph make_graph(std::size_t n,
                 std::initializer_list<std::pair<NodeId, NodeId>> edges);

}  // namespace netdiff
