#include <benchmark/benchmark.h>

#include "netdiff/generators.hpp"
#include "netdiff/kt.hpp"
#include "netdiff/metrics.hpp"
#include "netdiff/motif.hpp"
#include "netdiff/rng.hpp"
#include "netdiff/si_model.hpp"

namespace {

using namespace netdiff;

Graph er(std::size_t n) { return gen::erdos_renyi(n, 8.0 / static_cast<double>(n), 7); }

void BM_ErdosRenyi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen::erdos_renyi(n, 8.0 / static_cast<double>(n), seed++).edge_count());
}
BENCHMARK(BM_ErdosRenyi)->Arg(1000)->Arg(10000);

void BM_Delaunay(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen::delaunay(n, gen::PointDistribution::uniform_unit_square, 3).edge_count());
  }
}
BENCHMARK(BM_Delaunay)->Arg(500)->Arg(2000);

void BM_Betweenness(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
}
BENCHMARK(BM_Betweenness)->Arg(500)->Arg(2000);

void BM_Census(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(motif::census(g).total());
}
BENCHMARK(BM_Census)->Arg(600)->Arg(5000);

void BM_KtSimulate(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)));
  kt::KTParams p;
  Rng rng = make_rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kt::kt_simulate(g, p, kt::SeedKind::top_degree, rng));
  }
}
BENCHMARK(BM_KtSimulate)->Arg(600)->Arg(5000);

void BM_LogLikelihood(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)));
  const si::CovariateSet cov = si::centrality_covariates(g);
  const si::DistanceProvider d = si::DistanceProvider::hops(g);
  si::SIParams p;
  p.zeta = 1e-3;
  p.alpha = 0.5;
  p.gamma = 1.0;
  p.phi = {1.0, 1.0, 1.0};
  si::SimulationOptions opts;
  opts.horizon = 1e9;
  opts.max_infected = g.node_count() / 2;
  Rng rng = make_rng(2);
  const NodeId first = 0;
  const si::EventLog log = si::simulate_si(g, p, cov, d, {&first, 1}, opts, rng);
  for (auto _ : state) benchmark::DoNotOptimize(si::log_likelihood(p, log, g, cov, d));
}
BENCHMARK(BM_LogLikelihood)->Arg(500)->Arg(2000);

}  // namespace
BENCHMARK_MAIN();
