#include "netdiff/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdiff/error.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::geom {

namespace {

constexpr double kEpsilon = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kIncircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;
constexpr std::uint32_t kGhost = std::numeric_limits<std::uint32_t>::max();
constexpr int kMaxPerturbationRounds = 16;
constexpr double kPerturbation = 1e-12;

Sign sign_of(double det, double bound) {
  if (det > bound) return Sign::positive;
  if (det < -bound) return Sign::negative;
  return Sign::zero;
}

struct Degenerate {};

// Ghost triangles are stored as (a, b, kGhost) with the outside of the
// hull to the left of a -> b.
using Tri = std::array<std::uint32_t, 3>;

class Builder {
 public:
  explicit Builder(std::span<const Point> pts) : pts_(pts) {}

  std::vector<Tri> run() {
    const std::size_t n = pts_.size();
    std::size_t third = 2;
    while (third < n &&
           orient2d_sign(pts_[0], pts_[1], pts_[third]) == Sign::zero) {
      ++third;
    }
    if (third == n) throw Degenerate{};

    std::uint32_t a = 0, b = 1, c = static_cast<std::uint32_t>(third);
    if (orient2d_sign(pts_[a], pts_[b], pts_[c]) == Sign::negative) {
      std::swap(b, c);
    }
    tris_ = {{a, b, c}, {b, a, kGhost}, {c, b, kGhost}, {a, c, kGhost}};

    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == 0 || i == 1 || i == third) continue;
      insert(i);
    }
    return std::move(tris_);
  }

 private:
  bool in_circumcircle(const Tri& t, const Point& p) const {
    Sign s;
    if (t[2] == kGhost) {
      s = orient2d_sign(pts_[t[0]], pts_[t[1]], p);
    } else {
      s = incircle_sign(pts_[t[0]], pts_[t[1]], pts_[t[2]], p);
    }
    if (s == Sign::zero) throw Degenerate{};
    return s == Sign::positive;
  }

  void insert(std::uint32_t index) {
    const Point& p = pts_[index];
    cavity_.clear();
    kept_.clear();
    for (const Tri& t : tris_) {
      (in_circumcircle(t, p) ? cavity_ : kept_).push_back(t);
    }
    if (cavity_.empty()) throw Degenerate{};

    edges_.clear();
    for (const Tri& t : cavity_) {
      edges_.push_back({t[0], t[1]});
      edges_.push_back({t[1], t[2]});
      edges_.push_back({t[2], t[0]});
    }
    for (const auto& [u, w] : edges_) {
      const bool interior =
          std::any_of(edges_.begin(), edges_.end(), [&](const auto& e) {
            return e.first == w && e.second == u;
          });
      if (interior) continue;
      if (u == kGhost) {
        kept_.push_back({w, index, kGhost});
      } else if (w == kGhost) {
        kept_.push_back({index, u, kGhost});
      } else {
        kept_.push_back({u, w, index});
      }
    }
    std::swap(tris_, kept_);
  }

  std::span<const Point> pts_;
  std::vector<Tri> tris_;
  std::vector<Tri> cavity_;
  std::vector<Tri> kept_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

void perturb(std::vector<Point>& pts, int round) {
  double extent = 1.0;
  for (const Point& q : pts) {
    extent = std::max({extent, std::abs(q.x), std::abs(q.y)});
  }
  const double scale = kPerturbation * extent;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::uint64_t h = splitmix64(
        (static_cast<std::uint64_t>(round) << 40) ^ static_cast<std::uint64_t>(i));
    const std::uint64_t hy = splitmix64(h);
    // Map the top 53 bits to [-1, 1).
    const double ux = static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
    const double uy = static_cast<double>(hy >> 11) * 0x1.0p-52 - 1.0;
    pts[i].x += scale * ux;
    pts[i].y += scale * uy;
  }
}

}  // namespace

double orient2d(const Point& a, const Point& b, const Point& c) {
  return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

Sign orient2d_sign(const Point& a, const Point& b, const Point& c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  return sign_of(left - right, kOrientBound * (std::abs(left) + std::abs(right)));
}

double incircle(const Point& a, const Point& b, const Point& c,
                const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

Sign incircle_sign(const Point& a, const Point& b, const Point& c,
                   const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent =
      (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
      (std::abs(cdxady) + std::abs(adxcdy)) * blift +
      (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  return sign_of(det, kIncircleBound * permanent);
}

Triangulation delaunay_triangulation(std::span<const Point> points) {
  if (points.size() < 3) {
    throw Error("delaunay triangulation needs at least 3 points");
  }
  for (const Point& q : points) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
      throw Error("delaunay triangulation needs finite coordinates");
    }
  }
  std::size_t other = 1;
  while (other < points.size() && points[other] == points[0]) ++other;
  bool flat = true;
  for (std::size_t k = other + 1; k < points.size() && flat; ++k) {
    flat = orient2d_sign(points[0], points[other], points[k]) == Sign::zero;
  }
  if (flat) throw Error("delaunay triangulation: all points are collinear");

  Triangulation result;
  result.points.assign(points.begin(), points.end());
  for (int round = 0; round <= kMaxPerturbationRounds; ++round) {
    if (round > 0) perturb(result.points, round);
    try {
      std::vector<Tri> tris = Builder(result.points).run();
      result.triangles.clear();
      result.hull_size = 0;
      for (const Tri& t : tris) {
        if (t[2] == kGhost) {
          ++result.hull_size;
        } else {
          result.triangles.push_back(t);
        }
      }
      result.perturbation_rounds = round;
      return result;
    } catch (const Degenerate&) {
      continue;
    }
  }
  throw Error("delaunay triangulation: degenerate input not resolved");
}

Graph triangulation_graph(const Triangulation& t) {
  GraphBuilder b(t.points.size());
  for (const auto& tri : t.triangles) {
    b.add_edge(tri[0], tri[1]);
    b.add_edge(tri[1], tri[2]);
    b.add_edge(tri[2], tri[0]);
  }
  b.set_coordinates(t.points);
  return std::move(b).build();
}

}  // namespace netdiff::geom
