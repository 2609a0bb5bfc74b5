#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "netdiff/graph.hpp"

namespace netdiff::gen {

enum class GraphKind { erdos_renyi, geometric, delaunay, block_model };
enum class PointDistribution { uniform_unit_square, standard_normal };

GraphKind parse_graph_kind(std::string_view name);
std::string_view to_string(GraphKind kind);

using ProbabilityMatrix = std::vector<std::vector<double>>;

// Everything needed to draw one random graph.
struct GeneratorSpec {
  GraphKind kind = GraphKind::erdos_renyi;
  std::size_t n = 0;
  double p = 0.0;       // erdos_renyi
  double radius = 0.0;  // geometric
  PointDistribution points = PointDistribution::standard_normal;  // delaunay
  std::vector<std::size_t> block_sizes;  // block_model
  ProbabilityMatrix block_probabilities;  // block_model

  // Throws netdiff::Error when an invariant does not hold.
  void validate() const;
};

// Block matrix with `within` on the diagonal and `between` elsewhere.
ProbabilityMatrix uniform_block_matrix(std::size_t blocks, double within,
                                       double between);

// G(n, p): every pair independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// n uniform points on the unit square; edge iff distance <= radius.
Graph geometric_random(std::size_t n, double radius, std::uint64_t seed);

// Delaunay triangulation of n sampled points (coordinates stored).
Graph delaunay(std::size_t n, PointDistribution points, std::uint64_t seed);

// Pair (u, v) in blocks (a, b) is an edge with probability P[a][b]. Nodes
// are numbered block by block; block memberships are stored on the graph.
Graph stochastic_block_model(std::span<const std::size_t> block_sizes,
                             const ProbabilityMatrix& probabilities,
                             std::uint64_t seed);

Graph generate(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace netdiff::gen
