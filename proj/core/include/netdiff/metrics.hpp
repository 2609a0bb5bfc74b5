#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "netdiff/graph.hpp"

namespace netdiff {

// Hop count between nodes with no connecting path.
inline constexpr std::uint32_t kUnreachable =
    std::numeric_limits<std::uint32_t>::max();

// Dense n x n matrix of shortest-path hop counts.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n)
      : n_(n), hops_(n * n, kUnreachable) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(NodeId i, NodeId j) const { return hops_[i * n_ + j]; }
  std::uint32_t& operator()(NodeId i, NodeId j) { return hops_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> hops_;
};

enum class CentralityKind { degree, betweenness, clustering };

struct CentralityVector {
  CentralityKind kind = CentralityKind::degree;
  std::vector<double> values;
  bool normalized = false;
};

// p(k) = fraction of nodes with degree k. Throws on an empty graph.
std::map<std::size_t, double> degree_distribution(const Graph& g);

// Hop distances from one source (BFS); unreachable nodes get kUnreachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

DistanceMatrix path_lengths(const Graph& g);

// Mean hop count over ordered pairs. Throws on disconnected graphs.
double average_path_length(const Graph& g);
std::uint32_t diameter(const Graph& g);

// 2T(v) / (deg(v)(deg(v)-1)); zero when deg(v) < 2.
double clustering_coefficient(const Graph& g, NodeId v);

CentralityVector degree_centrality(const Graph& g);
// Brandes accumulation; values are over unordered pairs (not normalized).
CentralityVector betweenness_centrality(const Graph& g);
CentralityVector clustering_centrality(const Graph& g);

// Divides by the maximum entry; an all-zero vector stays all zero.
CentralityVector normalize_by_max(CentralityVector c);

std::vector<std::vector<NodeId>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Largest connected component as its own graph. Nodes keep their labels,
// attributes and relative order; ties go to the component holding the
// smallest node id.
Graph giant_component(const Graph& g);

// Subgraph induced by `nodes` (must be sorted ascending, no duplicates).
Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes);

}  // namespace netdiff
