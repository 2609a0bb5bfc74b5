#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "netdiff/graph.hpp"

namespace netdiff::motif {

// The six connected 4-node shapes, sparsest first.
enum class MotifKind : std::uint8_t { path4, star4, cycle4, paw, diamond, clique4 };

inline constexpr std::size_t kMotifCount = 6;
inline constexpr std::array<MotifKind, kMotifCount> kAllMotifs = {
    MotifKind::path4, MotifKind::star4,   MotifKind::cycle4,
    MotifKind::paw,   MotifKind::diamond, MotifKind::clique4};

std::string_view to_string(MotifKind kind);
MotifKind parse_motif_kind(std::string_view name);

// Graph on the vertex set {0, 1, 2, 3}, one adjacency bitmask per vertex.
class FourNodeGraph {
 public:
  FourNodeGraph() = default;
  // Throws netdiff::Error unless node_count == 4 and the edges are simple.
  FourNodeGraph(std::size_t node_count,
                std::span<const std::pair<int, int>> edges);

  static FourNodeGraph induced(const Graph& g, const std::array<NodeId, 4>& nodes);

  bool has_edge(int a, int b) const { return (adj_[a] >> b) & 1u; }
  int degree(int v) const;
  int edge_count() const;
  bool connected() const;
  // Sorted ascending.
  std::array<int, 4> degree_sequence() const;
  std::uint8_t neighbor_mask(int v) const { return adj_[v]; }

 private:
  void add_edge(int a, int b);

  std::array<std::uint8_t, 4> adj_{};
};

using WLDigest = std::uint64_t;

// Weisfeiler-Lehman refinement: labels start as degrees and each round
// becomes a hash of (own label, sorted neighbour labels). The digest hashes
// the sorted final multiset, so it is invariant under relabeling.
WLDigest wl_hash(const FourNodeGraph& h, int iterations = 3);
// Same on a general graph; throws netdiff::Error unless it has 4 nodes.
WLDigest wl_hash(const Graph& h, int iterations = 3);

struct MotifTemplate {
  MotifKind kind;
  FourNodeGraph shape;
  int edge_count;
  WLDigest wl_signature;
  std::array<int, 4> degree_multiset;
};

// In MotifKind order.
const std::array<MotifTemplate, kMotifCount>& templates();

struct MotifCensus {
  std::array<std::size_t, kMotifCount> counts{};
  // Sorted ids of the edges claimed by counted instances.
  std::vector<EdgeId> used_edges;
  std::size_t total_edges = 0;

  std::size_t count(MotifKind k) const { return counts[static_cast<std::size_t>(k)]; }
  std::size_t total() const;
};

// Greedy edge-disjoint census. For every node u in ascending order, first
// the 3-combinations of N(u), then the walks u-v-w-x, are offered as
// candidates; a candidate whose induced subgraph touches a claimed edge is
// skipped, otherwise its WL digest is matched densest template first and
// all its induced edges are claimed.
MotifCensus census(const Graph& g);

enum class CandidateOrder {
  lexicographic,
  // The order in which census() first encounters each 4-set.
  first_encounter,
};

// Exhaustive oracle over all 4-subsets (n <= 30). Shapes are classified by
// degree multiset, independently of the WL digest.
MotifCensus brute_force_census(const Graph& g,
                               CandidateOrder order = CandidateOrder::lexicographic);

// C_i = N_i / sum N_i. Throws "no motifs found" on an empty census.
std::array<double, kMotifCount> concentration(const MotifCensus& c);

}  // namespace netdiff::motif
