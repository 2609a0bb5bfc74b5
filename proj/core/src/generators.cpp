#include "netdiff/generators.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "netdiff/delaunay.hpp"
#include "netdiff/error.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::gen {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(std::string(what) + " must lie in [0, 1]");
  }
}

std::vector<Point> sample_points(std::size_t n, PointDistribution dist,
                                 Rng& rng) {
  std::vector<Point> pts(n);
  if (dist == PointDistribution::uniform_unit_square) {
    for (Point& q : pts) {
      q.x = uniform01(rng);
      q.y = uniform01(rng);
    }
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Point& q : pts) {
      q.x = normal(rng);
      q.y = normal(rng);
    }
  }
  return pts;
}

}  // namespace

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "er") return GraphKind::erdos_renyi;
  if (name == "grg") return GraphKind::geometric;
  if (name == "dt") return GraphKind::delaunay;
  if (name == "sbm") return GraphKind::block_model;
  throw Error("unknown graph kind '" + std::string(name) + "'");
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::erdos_renyi: return "er";
    case GraphKind::geometric: return "grg";
    case GraphKind::delaunay: return "dt";
    case GraphKind::block_model: return "sbm";
  }
  return "?";
}

void GeneratorSpec::validate() const {
  switch (kind) {
    case GraphKind::erdos_renyi:
      require_probability(p, "p");
      break;
    case GraphKind::geometric:
      if (!(radius >= 0.0)) throw Error("radius must be non-negative");
      break;
    case GraphKind::delaunay:
      if (n < 3) throw Error("delaunay graph needs n >= 3");
      break;
    case GraphKind::block_model: {
      const std::size_t k = block_sizes.size();
      if (block_probabilities.size() != k) {
        throw Error("block probability matrix must be k x k");
      }
      for (std::size_t a = 0; a < k; ++a) {
        if (block_probabilities[a].size() != k) {
          throw Error("block probability matrix must be k x k");
        }
        for (std::size_t b = 0; b < k; ++b) {
          require_probability(block_probabilities[a][b], "block probability");
          if (block_probabilities[a][b] != block_probabilities[b][a]) {
            throw Error("block probability matrix must be symmetric");
          }
        }
      }
      const std::size_t total =
          std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
      if (total != n) throw Error("block sizes must sum to n");
      break;
    }
  }
}

ProbabilityMatrix uniform_block_matrix(std::size_t blocks, double within,
                                       double between) {
  ProbabilityMatrix m(blocks, std::vector<double>(blocks, between));
  for (std::size_t a = 0; a < blocks; ++a) m[a][a] = within;
  return m;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  require_probability(p, "p");
  Rng rng = make_rng(seed);
  GraphBuilder b(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

Graph geometric_random(std::size_t n, double radius, std::uint64_t seed) {
  if (!(radius >= 0.0)) throw Error("radius must be non-negative");
  Rng rng = make_rng(seed);
  auto pts = sample_points(n, PointDistribution::uniform_unit_square, rng);
  GraphBuilder b(n);
  const double r2 = radius * radius;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double dx = pts[u].x - pts[v].x;
      const double dy = pts[u].y - pts[v].y;
      if (dx * dx + dy * dy <= r2) b.add_edge(u, v);
    }
  }
  b.set_coordinates(std::move(pts));
  return std::move(b).build();
}

Graph delaunay(std::size_t n, PointDistribution points, std::uint64_t seed) {
  if (n < 3) throw Error("delaunay graph needs n >= 3");
  Rng rng = make_rng(seed);
  const auto pts = sample_points(n, points, rng);
  return geom::triangulation_graph(geom::delaunay_triangulation(pts));
}

Graph stochastic_block_model(std::span<const std::size_t> block_sizes,
                             const ProbabilityMatrix& probabilities,
                             std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GraphKind::block_model;
  spec.block_sizes.assign(block_sizes.begin(), block_sizes.end());
  spec.block_probabilities = probabilities;
  spec.n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
  spec.validate();

  std::vector<std::uint32_t> block;
  block.reserve(spec.n);
  for (std::uint32_t k = 0; k < block_sizes.size(); ++k) {
    block.insert(block.end(), block_sizes[k], k);
  }
  Rng rng = make_rng(seed);
  GraphBuilder b(spec.n);
  for (NodeId u = 0; u < spec.n; ++u) {
    const auto& row = probabilities[block[u]];
    for (NodeId v = u + 1; v < spec.n; ++v) {
      if (uniform01(rng) < row[block[v]]) b.add_edge(u, v);
    }
  }
  b.set_blocks(std::move(block));
  return std::move(b).build();
}

Graph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case GraphKind::erdos_renyi: return erdos_renyi(spec.n, spec.p, seed);
    case GraphKind::geometric: return geometric_random(spec.n, spec.radius, seed);
    case GraphKind::delaunay: return delaunay(spec.n, spec.points, seed);
    case GraphKind::block_model:
      return stochastic_block_model(spec.block_sizes, spec.block_probabilities,
                                    seed);
  }
  throw Error("unknown graph kind");
}

}  // namespace netdiff::gen
