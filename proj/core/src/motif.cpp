#include "netdiff/motif.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "netdiff/error.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::motif {

namespace {

constexpr std::uint64_t kWLSeed = 0x6a09e667f3bcc908ULL;

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

FourNodeGraph shape_of(MotifKind kind) {
  using E = std::pair<int, int>;
  switch (kind) {
    case MotifKind::path4: {
      const E e[] = {{0, 1}, {1, 2}, {2, 3}};
      return FourNodeGraph(4, e);
    }
    case MotifKind::star4: {
      const E e[] = {{0, 1}, {0, 2}, {0, 3}};
      return FourNodeGraph(4, e);
    }
    case MotifKind::cycle4: {
      const E e[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
      return FourNodeGraph(4, e);
    }
    case MotifKind::paw: {
      const E e[] = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
      return FourNodeGraph(4, e);
    }
    case MotifKind::diamond: {
      const E e[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
      return FourNodeGraph(4, e);
    }
    case MotifKind::clique4: {
      const E e[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      return FourNodeGraph(4, e);
    }
  }
  throw Error("unknown motif kind");
}

std::array<MotifTemplate, kMotifCount> build_templates() {
  std::array<MotifTemplate, kMotifCount> out{};
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    const MotifKind k = kAllMotifs[i];
    const FourNodeGraph s = shape_of(k);
    out[i] = {k, s, s.edge_count(), wl_hash(s), s.degree_sequence()};
  }
  return out;
}

// Edge ids of the six vertex pairs of a 4-set (nullopt for non-edges).
struct InducedEdges {
  std::array<std::optional<EdgeId>, 6> ids;
  FourNodeGraph shape;
};

constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

InducedEdges induce(const Graph& g, const std::array<NodeId, 4>& s) {
  InducedEdges r;
  std::array<std::pair<int, int>, 6> present{};
  std::size_t count = 0;
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    r.ids[p] = g.edge_id(s[kPairs[p].first], s[kPairs[p].second]);
    if (r.ids[p]) present[count++] = kPairs[p];
  }
  r.shape = FourNodeGraph(4, std::span(present.data(), count));
  return r;
}

bool touches_used(const InducedEdges& ind, const std::vector<bool>& used) {
  return std::any_of(ind.ids.begin(), ind.ids.end(),
                     [&](const auto& e) { return e && used[*e]; });
}

void claim(const InducedEdges& ind, std::vector<bool>& used) {
  for (const auto& e : ind.ids) {
    if (e) used[*e] = true;
  }
}

MotifCensus finish(const Graph& g, std::array<std::size_t, kMotifCount> counts,
                   const std::vector<bool>& used) {
  MotifCensus c;
  c.counts = counts;
  c.total_edges = g.edge_count();
  for (EdgeId e = 0; e < used.size(); ++e) {
    if (used[e]) c.used_edges.push_back(e);
  }
  return c;
}

class Scanner {
 public:
  explicit Scanner(const Graph& g) : g_(g), used_(g.edge_count(), false) {}

  void offer(NodeId a, NodeId b, NodeId c, NodeId d) {
    const InducedEdges ind = induce(g_, {a, b, c, d});
    if (touches_used(ind, used_)) return;
    const WLDigest h = wl_hash(ind.shape);
    const auto& t = templates();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      if (it->wl_signature == h) {
        ++counts_[static_cast<std::size_t>(it->kind)];
        claim(ind, used_);
        return;
      }
    }
  }

  MotifCensus result() const { return finish(g_, counts_, used_); }

 private:
  const Graph& g_;
  std::vector<bool> used_;
  std::array<std::size_t, kMotifCount> counts_{};
};

std::size_t classify_by_degrees(const FourNodeGraph& s) {
  const auto seq = s.degree_sequence();
  const auto& t = templates();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].degree_multiset == seq) return i;
  }
  return kMotifCount;
}

// Position at which census() first offers the 4-set: the smallest
// (u, pass, a, b, c) over the star and walk encounters it admits.
using EncounterKey = std::array<NodeId, 5>;

EncounterKey first_encounter(const Graph& g, std::array<NodeId, 4> s) {
  constexpr NodeId kMax = std::numeric_limits<NodeId>::max();
  EncounterKey best{kMax, kMax, kMax, kMax, kMax};
  for (int i = 0; i < 4; ++i) {
    const NodeId u = s[i];
    std::array<NodeId, 3> rest{};
    for (int j = 0, k = 0; j < 4; ++j) {
      if (j != i) rest[k++] = s[j];
    }
    if (std::all_of(rest.begin(), rest.end(),
                    [&](NodeId x) { return g.has_edge(u, x); })) {
      best = std::min(best, EncounterKey{u, 0, rest[0], rest[1], rest[2]});
    }
    std::sort(rest.begin(), rest.end());
    do {
      if (g.has_edge(u, rest[0]) && g.has_edge(rest[0], rest[1]) &&
          g.has_edge(rest[1], rest[2])) {
        best = std::min(best, EncounterKey{u, 1, rest[0], rest[1], rest[2]});
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return best;
}

}  // namespace

std::string_view to_string(MotifKind kind) {
  switch (kind) {
    case MotifKind::path4: return "path4";
    case MotifKind::star4: return "star4";
    case MotifKind::cycle4: return "cycle4";
    case MotifKind::paw: return "paw";
    case MotifKind::diamond: return "diamond";
    case MotifKind::clique4: return "clique4";
  }
  return "?";
}

MotifKind parse_motif_kind(std::string_view name) {
  for (MotifKind k : kAllMotifs) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown motif '" + std::string(name) + "'");
}

FourNodeGraph::FourNodeGraph(std::size_t node_count,
                             std::span<const std::pair<int, int>> edges) {
  if (node_count != 4) {
    throw Error("WL motif hashing needs exactly 4 nodes, got " +
                std::to_string(node_count));
  }
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void FourNodeGraph::add_edge(int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3 || a == b) {
    throw Error("invalid edge in 4-node graph");
  }
  adj_[a] |= static_cast<std::uint8_t>(1u << b);
  adj_[b] |= static_cast<std::uint8_t>(1u << a);
}

FourNodeGraph FourNodeGraph::induced(const Graph& g,
                                     const std::array<NodeId, 4>& nodes) {
  return induce(g, nodes).shape;
}

int FourNodeGraph::degree(int v) const { return std::popcount(adj_[v]); }

int FourNodeGraph::edge_count() const {
  return (degree(0) + degree(1) + degree(2) + degree(3)) / 2;
}

bool FourNodeGraph::connected() const {
  std::uint8_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint8_t next = 0;
    for (int v = 0; v < 4; ++v) {
      if ((frontier >> v) & 1u) next |= adj_[v];
    }
    frontier = next & static_cast<std::uint8_t>(~seen);
    seen |= next;
  }
  return seen == 0xF;
}

std::array<int, 4> FourNodeGraph::degree_sequence() const {
  std::array<int, 4> d{degree(0), degree(1), degree(2), degree(3)};
  std::sort(d.begin(), d.end());
  return d;
}

WLDigest wl_hash(const FourNodeGraph& h, int iterations) {
  if (iterations < 0) throw Error("WL iterations must be non-negative");
  std::array<std::uint64_t, 4> label{};
  for (int v = 0; v < 4; ++v) label[v] = static_cast<std::uint64_t>(h.degree(v));
  for (int round = 0; round < iterations; ++round) {
    std::array<std::uint64_t, 4> next{};
    for (int v = 0; v < 4; ++v) {
      std::array<std::uint64_t, 3> nb{};
      int k = 0;
      for (int w = 0; w < 4; ++w) {
        if (h.has_edge(v, w)) nb[k++] = label[w];
      }
      std::sort(nb.begin(), nb.begin() + k);
      std::uint64_t acc = combine(kWLSeed, label[v]);
      acc = combine(acc, static_cast<std::uint64_t>(k));
      for (int i = 0; i < k; ++i) acc = combine(acc, nb[i]);
      next[v] = acc;
    }
    label = next;
  }
  std::sort(label.begin(), label.end());
  std::uint64_t digest = kWLSeed;
  for (std::uint64_t l : label) digest = combine(digest, l);
  return digest;
}

WLDigest wl_hash(const Graph& h, int iterations) {
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : h.edges()) {
    edges.emplace_back(static_cast<int>(e.u), static_cast<int>(e.v));
  }
  return wl_hash(FourNodeGraph(h.node_count(), edges), iterations);
}

const std::array<MotifTemplate, kMotifCount>& templates() {
  static const auto t = build_templates();
  return t;
}

std::size_t MotifCensus::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

MotifCensus census(const Graph& g) {
  Scanner scan(g);
  const auto n = static_cast<NodeId>(g.node_count());
  for (NodeId u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    const std::size_t d = nu.size();
    // Pass A: stars centred on u.
    for (std::size_t i = 0; i + 2 < d; ++i) {
      for (std::size_t j = i + 1; j + 1 < d; ++j) {
        for (std::size_t k = j + 1; k < d; ++k) {
          scan.offer(u, nu[i], nu[j], nu[k]);
        }
      }
    }
    // Pass B: walks starting at u.
    for (NodeId v : nu) {
      for (NodeId w : g.neighbors(v)) {
        if (w == u) continue;
        for (NodeId x : g.neighbors(w)) {
          if (x == u || x == v) continue;
          scan.offer(u, v, w, x);
        }
      }
    }
  }
  return scan.result();
}

MotifCensus brute_force_census(const Graph& g, CandidateOrder order) {
  const std::size_t n = g.node_count();
  if (n > 30) throw Error("brute-force census is limited to 30 nodes");

  struct Candidate {
    EncounterKey key;
    std::array<NodeId, 4> nodes;
  };
  std::vector<Candidate> candidates;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c)
        for (NodeId d = c + 1; d < n; ++d) {
          const std::array<NodeId, 4> s{a, b, c, d};
          if (!induce(g, s).shape.connected()) continue;
          const EncounterKey key = order == CandidateOrder::first_encounter
                                       ? first_encounter(g, s)
                                       : EncounterKey{a, b, c, d, 0};
          candidates.push_back({key, s});
        }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.key < y.key; });

  std::vector<bool> used(g.edge_count(), false);
  std::array<std::size_t, kMotifCount> counts{};
  for (const Candidate& cand : candidates) {
    const InducedEdges ind = induce(g, cand.nodes);
    if (touches_used(ind, used)) continue;
    const std::size_t kind = classify_by_degrees(ind.shape);
    if (kind == kMotifCount) continue;
    ++counts[kind];
    claim(ind, used);
  }
  return finish(g, counts, used);
}

std::array<double, kMotifCount> concentration(const MotifCensus& c) {
  const std::size_t total = c.total();
  if (total == 0) throw Error("no motifs found");
  std::array<double, kMotifCount> out{};
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    out[i] = static_cast<double>(c.counts[i]) / static_cast<double>(total);
  }
  return out;
}

}  // namespace netdiff::motif
