#include "netdiff/metrics.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "netdiff/error.hpp"

namespace netdiff {

namespace {

void require_nonempty(const Graph& g) {
  if (g.empty()) throw Error("empty graph");
}

}  // namespace

std::map<std::size_t, double> degree_distribution(const Graph& g) {
  require_nonempty(g);
  std::map<std::size_t, std::size_t> counts;
  for (NodeId v = 0; v < g.node_count(); ++v) ++counts[g.degree(v)];
  std::map<std::size_t, double> p;
  const double n = static_cast<double>(g.node_count());
  for (auto [k, c] : counts) p[k] = static_cast<double>(c) / n;
  return p;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

DistanceMatrix path_lengths(const Graph& g) {
  const std::size_t n = g.node_count();
  DistanceMatrix m(n);
  for (NodeId s = 0; s < n; ++s) {
    const auto d = bfs_distances(g, s);
    for (NodeId t = 0; t < n; ++t) m(s, t) = d[t];
  }
  return m;
}

double average_path_length(const Graph& g) {
  require_nonempty(g);
  const std::size_t n = g.node_count();
  if (n == 1) return 0.0;
  double total = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    for (std::uint32_t d : bfs_distances(g, s)) {
      if (d == kUnreachable) {
        throw Error("disconnected: restrict to giant component");
      }
      total += d;
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::uint32_t diameter(const Graph& g) {
  require_nonempty(g);
  std::uint32_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    for (std::uint32_t d : bfs_distances(g, s)) {
      if (d == kUnreachable) {
        throw Error("disconnected: restrict to giant component");
      }
      best = std::max(best, d);
    }
  }
  return best;
}

double clustering_coefficient(const Graph& g, NodeId v) {
  const auto nbrs = g.neighbors(v);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (g.has_edge(nbrs[a], nbrs[b])) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) /
         (static_cast<double>(k) * static_cast<double>(k - 1));
}

CentralityVector degree_centrality(const Graph& g) {
  CentralityVector c{CentralityKind::degree, {}, false};
  c.values.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    c.values[v] = static_cast<double>(g.degree(v));
  }
  return c;
}

CentralityVector betweenness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  CentralityVector c{CentralityKind::betweenness, std::vector<double>(n, 0.0),
                     false};
  std::vector<double> sigma(n), delta(n);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }
    // Predecessors of w are exactly the neighbours one hop closer to s.
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      for (NodeId u : g.neighbors(w)) {
        if (dist[u] == dist[w] - 1) {
          delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        }
      }
      c.values[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both endpoints.
  for (double& x : c.values) x /= 2.0;
  return c;
}

CentralityVector clustering_centrality(const Graph& g) {
  CentralityVector c{CentralityKind::clustering, {}, false};
  c.values.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    c.values[v] = clustering_coefficient(g, v);
  }
  return c;
}

CentralityVector normalize_by_max(CentralityVector c) {
  const double top = c.values.empty()
                         ? 0.0
                         : *std::max_element(c.values.begin(), c.values.end());
  if (top > 0.0) {
    for (double& x : c.values) x /= top;
  } else {
    std::fill(c.values.begin(), c.values.end(), 0.0);
  }
  c.normalized = true;
  return c;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeId>> components;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> members{s};
    seen[s] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (NodeId w : g.neighbors(members[head])) {
        if (!seen[w]) {
          seen[w] = true;
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

bool is_connected(const Graph& g) {
  return g.node_count() <= 1 || connected_components(g).size() == 1;
}

Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes) {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.node_count(), kAbsent);
  GraphBuilder b;
  for (NodeId v : nodes) remap[v] = b.add_node(g.label(v));
  for (const Edge& e : g.edges()) {
    if (remap[e.u] != kAbsent && remap[e.v] != kAbsent) {
      b.add_edge(remap[e.u], remap[e.v], e.weight);
    }
  }
  if (g.has_coordinates()) {
    std::vector<Point> xy;
    xy.reserve(nodes.size());
    for (NodeId v : nodes) xy.push_back(g.coordinate(v));
    b.set_coordinates(std::move(xy));
  }
  if (g.has_blocks()) {
    std::vector<std::uint32_t> blocks;
    blocks.reserve(nodes.size());
    for (NodeId v : nodes) blocks.push_back(g.blocks()[v]);
    b.set_blocks(std::move(blocks));
  }
  return std::move(b).build();
}

Graph giant_component(const Graph& g) {
  require_nonempty(g);
  auto components = connected_components(g);
  // Components are discovered in order of their smallest node, so the
  // first maximal one wins ties.
  const auto best = std::max_element(
      components.begin(), components.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return induced_subgraph(g, *best);
}

}  // namespace netdiff
