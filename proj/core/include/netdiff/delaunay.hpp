#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "netdiff/graph.hpp"

namespace netdiff::geom {

// Sign of a geometric predicate. Filtered predicates report zero when the
// determinant is within its floating-point error bound.
enum class Sign : std::int8_t { negative = -1, zero = 0, positive = 1 };

// > 0 when a, b, c turn counter-clockwise.
double orient2d(const Point& a, const Point& b, const Point& c);
// > 0 when d lies inside the circle through counter-clockwise a, b, c.
double incircle(const Point& a, const Point& b, const Point& c,
                const Point& d);

// Filtered predicates: Sign::zero means the magnitude is below the
// forward error bound, i.e. the sign cannot be trusted.
Sign orient2d_sign(const Point& a, const Point& b, const Point& c);
Sign incircle_sign(const Point& a, const Point& b, const Point& c,
                   const Point& d);

struct Triangulation {
  // Input points, possibly nudged by the degeneracy perturbation.
  std::vector<Point> points;
  // Counter-clockwise vertex triples.
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::size_t hull_size = 0;
  // Number of perturbation rounds that were needed (0 for generic input).
  int perturbation_rounds = 0;
};

// Bowyer-Watson insertion. Hull edges are tracked with ghost triangles
// rather than a finite super-triangle, so no boundary edges are lost.
// Cocircular or collinear configurations are resolved by a deterministic
// hash-based coordinate perturbation of magnitude 1e-12 (relative to the
// point-set extent). Throws netdiff::Error for fewer than 3 points or when
// all points are collinear.
Triangulation delaunay_triangulation(std::span<const Point> points);

// Unique undirected edges of a triangulation, as a graph over its points.
Graph triangulation_graph(const Triangulation& t);

}  // namespace netdiff::geom
