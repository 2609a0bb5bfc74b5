#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "netdiff/error.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/motif.hpp"
#include "netdiff/rng.hpp"

using namespace netdiff;
using namespace netdiff::motif;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

FourNodeGraph shape(const Pairs& e) { return FourNodeGraph(4, e); }

Graph complete(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

Graph cycle(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId v = 0; v < n; ++v) b.add_edge(v, static_cast<NodeId>((v + 1) % n));
  return std::move(b).build();
}

// K4 on {0,1,2,3} and K4 on {2,3,4,5}, sharing edge 2-3.
Graph two_k4() {
  GraphBuilder b(6);
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = u + 1; v < 4; ++v) b.add_edge(u, v);
  for (NodeId u = 2; u < 6; ++u)
    for (NodeId v = u + 1; v < 6; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

std::array<std::size_t, kMotifCount> only(MotifKind k, std::size_t n) {
  std::array<std::size_t, kMotifCount> c{};
  c[static_cast<std::size_t>(k)] = n;
  return c;
}

void expect_edge_disjoint(const Graph& g, const MotifCensus& c) {
  std::size_t claimed = 0;
  for (std::size_t m = 0; m < kMotifCount; ++m)
    claimed += c.counts[m] * static_cast<std::size_t>(templates()[m].edge_count);
  EXPECT_EQ(claimed, c.used_edges.size());
  EXPECT_TRUE(std::adjacent_find(c.used_edges.begin(), c.used_edges.end()) ==
              c.used_edges.end());
  EXPECT_LE(c.used_edges.size(), g.edge_count());
  EXPECT_EQ(c.total_edges, g.edge_count());
}

}  // namespace

TEST(Templates, DegreeMultisets) {
  const auto& t = templates();
  EXPECT_EQ(t[0].degree_multiset, (std::array<int, 4>{1, 1, 2, 2}));
  EXPECT_EQ(t[1].degree_multiset, (std::array<int, 4>{1, 1, 1, 3}));
  EXPECT_EQ(t[2].degree_multiset, (std::array<int, 4>{2, 2, 2, 2}));
  EXPECT_EQ(t[3].degree_multiset, (std::array<int, 4>{1, 2, 2, 3}));
  EXPECT_EQ(t[4].degree_multiset, (std::array<int, 4>{2, 2, 3, 3}));
  EXPECT_EQ(t[5].degree_multiset, (std::array<int, 4>{3, 3, 3, 3}));
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    EXPECT_TRUE(t[i].shape.connected());
    EXPECT_EQ(t[i].shape.edge_count(), t[i].edge_count);
    EXPECT_EQ(t[i].kind, kAllMotifs[i]);
    for (std::size_t j = i + 1; j < kMotifCount; ++j)
      EXPECT_NE(t[i].wl_signature, t[j].wl_signature);
  }
}

TEST(FourNode, RejectsWrongSize) {
  const Pairs e{{0, 1}};
  EXPECT_THROW(FourNodeGraph(3, e), Error);
  const Pairs loop{{1, 1}};
  EXPECT_THROW(FourNodeGraph(4, loop), Error);
  EXPECT_THROW(wl_hash(make_graph(5, {{0, 1}})), Error);
}

TEST(WlHash, PawRelabelingsAgree) {
  EXPECT_EQ(wl_hash(shape({{0, 1}, {1, 2}, {0, 2}, {2, 3}})),
            wl_hash(shape({{3, 1}, {1, 0}, {3, 0}, {0, 2}})));
  EXPECT_NE(wl_hash(shape({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})),
            wl_hash(shape({{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
  EXPECT_EQ(wl_hash(make_graph(4, {{0, 1}, {1, 2}, {2, 3}})),
            wl_hash(shape({{0, 1}, {1, 2}, {2, 3}})));
}

TEST(WlHash, InvariantUnderAllRelabelings) {
  // Every one of the 64 graphs on 4 labeled nodes, under all 24 permutations.
  const Pairs all{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (unsigned mask = 0; mask < 64; ++mask) {
    Pairs e;
    for (int b = 0; b < 6; ++b)
      if (mask >> b & 1u) e.push_back(all[b]);
    const WLDigest base = wl_hash(shape(e));
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      Pairs pe;
      for (auto [a, b] : e) pe.emplace_back(perm[a], perm[b]);
      ASSERT_EQ(wl_hash(shape(pe)), base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(WlHash, AgreesWithDegreeMultisetOnConnectedShapes) {
  const Pairs all{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (unsigned mask = 0; mask < 64; ++mask) {
    Pairs e;
    for (int b = 0; b < 6; ++b)
      if (mask >> b & 1u) e.push_back(all[b]);
    const FourNodeGraph h = shape(e);
    if (!h.connected()) continue;
    int by_hash = -1, by_degree = -1;
    for (std::size_t m = 0; m < kMotifCount; ++m) {
      if (templates()[m].wl_signature == wl_hash(h)) by_hash = static_cast<int>(m);
      if (templates()[m].degree_multiset == h.degree_sequence()) by_degree = static_cast<int>(m);
    }
    EXPECT_GE(by_hash, 0);
    EXPECT_EQ(by_hash, by_degree);
  }
}

TEST(Census, Examples) {
  EXPECT_EQ(census(complete(4)).counts, only(MotifKind::clique4, 1));
  EXPECT_EQ(census(make_graph(4, {{0, 1}, {0, 2}, {0, 3}})).counts, only(MotifKind::star4, 1));
  const Graph g = two_k4();
  const MotifCensus c = census(g);
  EXPECT_EQ(c.counts, only(MotifKind::clique4, 1));
  EXPECT_EQ(brute_force_census(g, CandidateOrder::first_encounter).counts, c.counts);
  EXPECT_EQ(brute_force_census(g).counts, c.counts);
  expect_edge_disjoint(g, c);
}

TEST(Census, SixCycleGolden) {
  // Lexicographic oracle: {0,1,2,3} claims three edges, {0,3,4,5} the rest.
  const Graph c6 = cycle(6);
  EXPECT_EQ(brute_force_census(c6).counts, only(MotifKind::path4, 2));
  EXPECT_EQ(census(c6).counts,
            brute_force_census(c6, CandidateOrder::first_encounter).counts);
}

TEST(Census, K4MatchesOracle) {
  EXPECT_EQ(census(complete(4)).counts, brute_force_census(complete(4)).counts);
}

TEST(Census, EquivalenceSweepG8) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = gen::erdos_renyi(8, 0.4, seed);
    const MotifCensus c = census(g);
    const MotifCensus o = brute_force_census(g, CandidateOrder::first_encounter);
    ASSERT_EQ(c.counts, o.counts) << "seed " << seed;
    EXPECT_EQ(c.used_edges, o.used_edges);
    expect_edge_disjoint(g, c);
  }
}

TEST(Census, OracleRejectsLargeGraphs) {
  EXPECT_THROW(brute_force_census(gen::erdos_renyi(31, 0.1, 1)), Error);
}

TEST(Census, VertexTransitiveRelabelings) {
  for (std::size_t n : {5u, 6u, 7u, 9u}) {
    const MotifCensus base = census(cycle(n));
    const MotifCensus kbase = census(complete(n));
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    Rng rng = make_rng(n);
    for (int r = 0; r < 10; ++r) {
      std::shuffle(perm.begin(), perm.end(), rng);
      GraphBuilder bc(n), bk(n);
      for (NodeId v = 0; v < n; ++v)
        bc.add_edge(perm[v], perm[(v + 1) % n]);
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) bk.add_edge(perm[u], perm[v]);
      EXPECT_EQ(census(std::move(bc).build()).counts, base.counts);
      EXPECT_EQ(census(std::move(bk).build()).counts, kbase.counts);
    }
  }
}

TEST(Concentration, Examples) {
  MotifCensus c;
  c.counts = only(MotifKind::star4, 2);
  c.counts[static_cast<std::size_t>(MotifKind::path4)] = 2;
  const auto conc = concentration(c);
  EXPECT_DOUBLE_EQ(conc[0], 0.5);
  EXPECT_DOUBLE_EQ(conc[1], 0.5);
  MotifCensus one;
  one.counts = only(MotifKind::paw, 1);
  EXPECT_DOUBLE_EQ(concentration(one)[3], 1.0);
  try {
    concentration(MotifCensus{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no motifs found");
  }
}

TEST(Concentration, SumsToOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MotifCensus c = census(gen::erdos_renyi(60, 0.1, seed));
    const auto conc = concentration(c);
    EXPECT_NEAR(std::accumulate(conc.begin(), conc.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(Names, RoundTrip) {
  for (MotifKind k : kAllMotifs) EXPECT_EQ(parse_motif_kind(to_string(k)), k);
  EXPECT_THROW(parse_motif_kind("triangle"), Error);
}
