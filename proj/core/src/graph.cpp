#include "netdiff/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netdiff/error.hpp"

namespace netdiff {

std::optional<EdgeId> Graph::edge_id(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count() || u == v) return std::nullopt;
  // Search the shorter of the two sorted neighbour lists.
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::optional<double> Graph::weight(NodeId u, NodeId v) const {
  if (auto e = edge_id(u, v)) return edges_[*e].weight;
  return std::nullopt;
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::with_coordinates(std::vector<Point> coordinates) const {
  if (coordinates.size() != node_count()) {
    throw Error("coordinate count does not match node count");
  }
  Graph copy = *this;
  copy.coordinates_ = std::move(coordinates);
  return copy;
}

GraphBuilder::GraphBuilder(std::size_t node_count) {
  labels_.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) add_node();
}

NodeId GraphBuilder::add_node(std::string label) {
  const auto id = static_cast<NodeId>(labels_.size());
  if (label.empty()) label = std::to_string(id);
  if (!index_.emplace(label, id).second) {
    throw Error("duplicate node label '" + label + "'");
  }
  labels_.push_back(std::move(label));
  return id;
}

NodeId GraphBuilder::node(std::string_view label) {
  if (auto id = find(label)) return *id;
  return add_node(std::string(label));
}

std::optional<NodeId> GraphBuilder::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
  if (u >= labels_.size() || v >= labels_.size()) {
    throw Error("edge endpoint out of range");
  }
  if (u == v) throw Error("self-loop on node '" + labels_[u] + "'");
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error("edge weight must be finite and non-negative");
  }
  if (u > v) std::swap(u, v);
  pending_.push_back({u, v, weight});
}

void GraphBuilder::set_coordinates(std::vector<Point> coordinates) {
  coordinates_ = std::move(coordinates);
}

void GraphBuilder::set_blocks(std::vector<std::uint32_t> blocks) {
  blocks_ = std::move(blocks);
}

Graph GraphBuilder::build() && {
  const std::size_t n = labels_.size();
  if (!coordinates_.empty() && coordinates_.size() != n) {
    throw Error("coordinate count does not match node count");
  }
  if (!blocks_.empty() && blocks_.size() != n) {
    throw Error("block label count does not match node count");
  }

  // Stable sort, then keep the last occurrence of each pair.
  std::stable_sort(pending_.begin(), pending_.end(),
                   [](const Edge& a, const Edge& b) {
                     return a.u != b.u ? a.u < b.u : a.v < b.v;
                   });
  std::vector<Edge> edges;
  edges.reserve(pending_.size());
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    const bool last_of_run = i + 1 == pending_.size() ||
                             pending_[i + 1].u != pending_[i].u ||
                             pending_[i + 1].v != pending_[i].v;
    if (last_of_run) edges.push_back(pending_[i]);
  }

  Graph g;
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  g.coordinates_ = std::move(coordinates_);
  g.blocks_ = std::move(blocks_);

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), g.offsets_.begin() + 1);
  g.adjacency_.resize(2 * edges.size());
  g.adjacent_edge_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in edge order leaves each
  // neighbour list sorted: for node x, entries from edges (w, x) with w < x
  // arrive before entries from (x, y) with y > x.
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    g.adjacency_[cursor[e.u]] = e.v;
    g.adjacent_edge_[cursor[e.u]++] = id;
    g.adjacency_[cursor[e.v]] = e.u;
    g.adjacent_edge_[cursor[e.v]++] = id;
  }
  g.edges_ = std::move(edges);
  pending_.clear();
  return g;
}

Graph make_graph(std::size_t n,
                 std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

}  // namespace netdiff
