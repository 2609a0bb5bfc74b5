#include <algorithm>

#include <gtest/gtest.h>

#include "netdiff/error.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/kt.hpp"

using namespace netdiff;
using namespace netdiff::kt;

namespace {

Graph star4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
Graph path4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }
Graph complete(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

KTParams quiet(double tau) {
  KTParams p;
  p.tau = tau;
  p.delta = 0.0;
  p.beta = 0.0;
  p.steps = 10;
  return p;
}

}  // namespace

TEST(Params, Validation) {
  KTParams p;
  EXPECT_NO_THROW(p.validate());
  p.eta0 = 0.98;
  EXPECT_THROW(p.validate(), Error);  // eta0 + beta > 1
  p = {};
  p.steps = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.delta = 1.5;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Seeds, Examples) {
  Rng rng = make_rng(1);
  EXPECT_EQ(select_seeds(star4(), {SeedKind::top_degree, 0.25}, rng),
            std::vector<NodeId>{0});
  const Graph er = gen::erdos_renyi(300, 0.02, 4);
  EXPECT_EQ(select_seeds(er, {SeedKind::top_degree, 0.01}, rng).size(), 3u);
  EXPECT_EQ(select_seeds(complete(6), {SeedKind::top_betweenness, 0.5}, rng),
            (std::vector<NodeId>{0, 1, 2}));
  EXPECT_THROW(select_seeds(star4(), {SeedKind::random, 0.0}, rng), Error);
  EXPECT_THROW(select_seeds(star4(), {SeedKind::random, 1.5}, rng), Error);
}

TEST(Seeds, TopDegreeAreMaximal) {
  Rng rng = make_rng(2);
  const Graph g = gen::erdos_renyi(200, 0.03, 8);
  const auto seeds = select_seeds(g, {SeedKind::top_degree, 0.05}, rng);
  std::size_t min_seed = g.node_count();
  for (NodeId s : seeds) min_seed = std::min(min_seed, g.degree(s));
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!std::binary_search(seeds.begin(), seeds.end(), v)) EXPECT_LE(g.degree(v), min_seed);
}

TEST(Blocked, Examples) {
  Rng rng = make_rng(3);
  const std::vector<NodeId> seeds{0, 1};
  EXPECT_TRUE(select_blocked(star4(), 0.0, seeds, rng).empty());
  const Graph g = gen::erdos_renyi(100, 0.05, 1);
  const auto b = select_blocked(g, 0.05, seeds, rng);
  ASSERT_EQ(b.size(), 5u);
  for (NodeId v : b) EXPECT_TRUE(v != 0 && v != 1);
  EXPECT_THROW(select_blocked(star4(), 0.9, seeds, rng), Error);
}

TEST(Run, ZeroThresholdAdoptsEverythingAtStepOne) {
  Rng rng = make_rng(4);
  const Graph g = gen::erdos_renyi(30, 1.0, 0);
  const std::vector<NodeId> seeds{5};
  const auto trace = kt_run(g, quiet(0.0), seeds, {}, rng);
  for (NodeId v = 0; v < 30; ++v) EXPECT_EQ(trace.adoption_step(v), v == 5 ? 0 : 1);
}

TEST(Run, FullThresholdStallsOnPath) {
  Rng rng = make_rng(5);
  const std::vector<NodeId> seeds{0};
  EXPECT_THROW(kt_run(path4(), quiet(1.01), seeds, {}, rng), Error);
  const auto trace = kt_run(path4(), quiet(1.0), seeds, {}, rng);
  for (double e : trace.eta()) EXPECT_DOUBLE_EQ(e, 0.25);
  const auto speed = diffusion_speed(trace);
  EXPECT_EQ(speed.status, SpeedStatus::unsaturated);
  EXPECT_DOUBLE_EQ(speed.nu, 0.0);
}

TEST(Run, PathFrontAdvancesOneNodePerStep) {
  Rng rng = make_rng(6);
  const std::vector<NodeId> seeds{0};
  const auto trace = kt_run(path4(), quiet(0.5), seeds, {}, rng);
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(trace.adoption_step(v), static_cast<int>(v));
  EXPECT_DOUBLE_EQ(trace.eta()[1], 0.5);
  EXPECT_DOUBLE_EQ(trace.eta()[2], 0.75);
  EXPECT_DOUBLE_EQ(trace.eta()[3], 1.0);
  EXPECT_EQ(trace.steps(), 10u);
  EXPECT_EQ(trace.steady_step(), 3u);
  const auto speed = diffusion_speed(trace);
  EXPECT_EQ(speed.status, SpeedStatus::saturated);
  EXPECT_DOUBLE_EQ(speed.nu, (0.95 - 0.25) / 3.0);
}

TEST(Speed, Arithmetic) {
  std::vector<double> eta(60, 0.01);
  for (std::size_t t = 47; t < 60; ++t) eta[t] = 0.95;
  const DiffusionTrace trace(std::vector<std::int32_t>(100, DiffusionTrace::kNever),
                             std::vector<bool>(100, false), eta, 0.95);
  const auto s = diffusion_speed(trace);
  EXPECT_EQ(s.status, SpeedStatus::saturated);
  EXPECT_NEAR(s.nu, 0.94 / 47.0, 1e-15);
  const DiffusionTrace full(std::vector<std::int32_t>(1, 0), std::vector<bool>(1, false),
                            {1.0, 1.0}, 0.95);
  EXPECT_EQ(diffusion_speed(full).status, SpeedStatus::already_steady);
  EXPECT_DOUBLE_EQ(diffusion_speed(full).nu, 0.0);
}

TEST(FractionInfected, Examples) {
  std::vector<std::int32_t> at(300, DiffusionTrace::kNever);
  for (int i = 0; i < 3; ++i) at[i] = 0;
  const DiffusionTrace trace(at, std::vector<bool>(300, false), {0.01, 0.1}, 0.95);
  EXPECT_DOUBLE_EQ(fraction_infected(trace, 0), 0.01);
  EXPECT_DOUBLE_EQ(fraction_infected(trace, 1), 0.1);
  EXPECT_THROW(fraction_infected(trace, 2), Error);
}

TEST(Run, SeedsMustNotBeBlocked) {
  Rng rng = make_rng(7);
  const std::vector<NodeId> seeds{1};
  EXPECT_THROW(kt_run(path4(), quiet(0.5), seeds, seeds, rng), Error);
}

TEST(Simulate, SingleNodeGraph) {
  Rng rng = make_rng(8);
  KTParams p;
  p.beta = 0.0;
  const auto trace = kt_simulate(make_graph(1, {}), p, SeedKind::random, rng);
  for (double e : trace.eta()) EXPECT_DOUBLE_EQ(e, 1.0);
}

TEST(Simulate, StateQueries) {
  Rng rng = make_rng(9);
  KTParams p;
  p.steps = 100;
  const Graph g = gen::erdos_renyi(200, 0.03, 2);
  const auto trace = kt_simulate(g, p, SeedKind::top_degree, rng);
  std::size_t blocked = 0;
  for (NodeId v = 0; v < 200; ++v) {
    blocked += trace.blocked(v);
    if (trace.blocked(v)) EXPECT_EQ(trace.state(50, v), NodeState::blocked);
  }
  EXPECT_EQ(blocked, 10u);
  EXPECT_DOUBLE_EQ(trace.eta()[0], 2.0 / 200.0);
}

TEST(Parse, SeedKinds) {
  EXPECT_EQ(parse_seed_kind("degree"), SeedKind::top_degree);
  EXPECT_EQ(parse_seed_kind("betweenness"), SeedKind::top_betweenness);
  EXPECT_EQ(parse_seed_kind("random"), SeedKind::random);
  EXPECT_THROW(parse_seed_kind("pagerank"), Error);
}
