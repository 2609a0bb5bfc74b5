// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Pass criterion numbers as arguments to run a subset.
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "netdiff/error.hpp"
#include "netdiff/experiment.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/io.hpp"
#include "netdiff/kt.hpp"
#include "netdiff/mcmc.hpp"
#include "netdiff/metrics.hpp"
#include "netdiff/motif.hpp"
#include "netdiff/si_model.hpp"
#include "netdiff/stats.hpp"
#include "oracles/graph_oracles.hpp"
#include "oracles/stat_oracles.hpp"

using namespace netdiff;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

// Collects failed checks; the first few are reported.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_.size() < 4) failures_.push_back(what);
    ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }

  Outcome outcome() const {
    Outcome o;
    o.status = failed_ == 0 ? Status::pass : Status::fail;
    std::vector<std::string> parts = failed_ == 0 ? notes_ : failures_;
    if (failed_ > failures_.size()) {
      parts.push_back("+" + std::to_string(failed_ - failures_.size()) + " more");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
    return o;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  std::size_t failed_ = 0;
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// ---------------------------------------------------------------- 1

Outcome generator_calibration() {
  Checks c;
  constexpr std::size_t kSeeds = 1000;
  double er = 0, grg = 0;
  std::size_t dt_max = 0;
  for (std::size_t i = 0; i < kSeeds; ++i) {
    er += static_cast<double>(gen::erdos_renyi(300, 0.02, derive_seed(101, i)).edge_count());
    grg += static_cast<double>(
        gen::geometric_random(300, 0.08, derive_seed(102, i)).edge_count());
    const Graph dt =
        gen::delaunay(300, gen::PointDistribution::standard_normal, derive_seed(103, i));
    const std::size_t h = oracle::convex_hull_size(dt.coordinates());
    c.expect(dt.edge_count() == 3 * 300 - 3 - h,
             "DT seed " + std::to_string(i) + ": |E| = " + std::to_string(dt.edge_count()) +
                 ", hull " + std::to_string(h));
    c.expect(dt.edge_count() <= 894, "DT |E| above 894");
    dt_max = std::max(dt_max, dt.edge_count());
  }
  er /= kSeeds;
  grg /= kSeeds;
  c.expect(er >= 894 && er <= 900, "ER mean edges " + fmt(er) + " outside [894, 900]");
  c.expect(grg >= 810 && grg <= 990, "GRG mean edges " + fmt(grg) + " outside [810, 990]");
  c.note("ER mean " + fmt(er) + ", GRG mean " + fmt(grg) + ", DT max " +
         std::to_string(dt_max));
  return c.outcome();
}

// ---------------------------------------------------------------- 2

Outcome topology_ordering() {
  Checks c;
  kt::KTParams p;
  p.tau = 0.30;
  p.delta = 0.001;
  p.beta = 0.05;
  p.eta0 = 0.01;
  p.steps = 500;
  constexpr std::size_t kRuns = 1000;
  gen::GeneratorSpec er{.kind = gen::GraphKind::erdos_renyi, .n = 300, .p = 0.02};
  gen::GeneratorSpec grg{.kind = gen::GraphKind::geometric, .n = 300, .radius = 0.08};
  gen::GeneratorSpec dt{.kind = gen::GraphKind::delaunay, .n = 300};
  const auto seeding = kt::SeedKind::top_degree;
  const auto b_dt =
      stats::infection_bands(experiment::kt_generated_ensemble(dt, p, seeding, kRuns, 201));
  const auto b_er =
      stats::infection_bands(experiment::kt_generated_ensemble(er, p, seeding, kRuns, 202));
  const auto b_grg =
      stats::infection_bands(experiment::kt_generated_ensemble(grg, p, seeding, kRuns, 203));

  std::size_t t = 0;
  while (t < b_dt.mean.size() && b_dt.mean[t] < 0.5) ++t;
  if (t == b_dt.mean.size()) {
    c.expect(false, "mean DT curve never reaches 0.5");
    return c.outcome();
  }
  const double dt_eta = b_dt.mean[t], er_eta = b_er.mean[t], grg_eta = b_grg.mean[t];
  const std::string at = "t=" + std::to_string(t) + ": DT " + fmt(dt_eta) + ", ER " +
                         fmt(er_eta) + ", GRG " + fmt(grg_eta);
  c.expect(dt_eta > er_eta && er_eta > grg_eta, "ordering DT > ER > GRG fails at " + at);
  const bool disjoint = b_dt.lo[t] > b_grg.hi[t] || b_grg.lo[t] > b_dt.hi[t];
  c.expect(disjoint, "DT band [" + fmt(b_dt.lo[t]) + ", " + fmt(b_dt.hi[t]) +
                         "] overlaps GRG band [" + fmt(b_grg.lo[t]) + ", " +
                         fmt(b_grg.hi[t]) + "]");
  c.note(at);
  return c.outcome();
}

// ---------------------------------------------------------------- 3

Outcome motif_speed() {
  Checks c;
  experiment::MotifSpeedConfig cfg;
  cfg.block_sizes = {200, 200, 200};
  cfg.pw = 0.03;
  cfg.pb_grid = experiment::linear_grid(0.001, 0.01, 10);
  cfg.runs = 100;
  cfg.kt.tau = 0.30;
  cfg.seeding = kt::SeedKind::top_degree;
  const auto r = experiment::motif_speed_experiment(cfg, 301);
  auto corr = [&](motif::MotifKind k) {
    return r.rows[static_cast<std::size_t>(k)].mean_corr;
  };
  const double star = corr(motif::MotifKind::star4);
  const double path = corr(motif::MotifKind::path4);
  const double third = corr(motif::MotifKind::cycle4);
  const std::string summary = "star4 " + fmt(star) + ", path4 " + fmt(path) + ", cycle4 " +
                              fmt(third) + ", skipped runs " + std::to_string(r.skipped_runs);
  c.expect(star > 0 && path > 0 && third > 0, "not all positive: " + summary);
  c.expect(star > 0.8, "star4 mean correlation " + fmt(star) + " <= 0.8");
  c.expect(star > path && path > third, "ordering star4 > path4 > cycle4 fails");
  c.note(summary);
  return c.outcome();
}

// ---------------------------------------------------------------- 4

bool edge_disjoint(const motif::MotifCensus& m) {
  std::size_t claimed = 0;
  for (std::size_t k = 0; k < motif::kMotifCount; ++k)
    claimed += m.counts[k] * static_cast<std::size_t>(motif::templates()[k].edge_count);
  std::vector<EdgeId> e = m.used_edges;
  std::sort(e.begin(), e.end());
  return claimed == e.size() && std::adjacent_find(e.begin(), e.end()) == e.end();
}

Outcome census_correctness() {
  Checks c;
  Rng rng = make_rng(401);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + uniform_index(rng, 7);
    const Graph g = gen::erdos_renyi(n, 0.15 + 0.7 * uniform01(rng), rng());
    const motif::MotifCensus got = motif::census(g);
    const motif::MotifCensus want =
        motif::brute_force_census(g, motif::CandidateOrder::first_encounter);
    c.expect(got.counts == want.counts, "trial " + std::to_string(trial) + " disagrees");
    c.expect(edge_disjoint(got), "trial " + std::to_string(trial) + " reuses an edge");
    ++checked;
  }
  const Graph two_k4 = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                      {0, 4}, {1, 4}, {0, 5}, {1, 5}, {4, 5}});
  const motif::MotifCensus k = motif::census(two_k4);
  motif::MotifCensus expected;
  expected.counts[static_cast<std::size_t>(motif::MotifKind::clique4)] = 1;
  c.expect(k.counts == expected.counts, "two K4s sharing an edge: not exactly {clique4: 1}");
  c.expect(edge_disjoint(k), "two K4s: edge reused");
  c.note(std::to_string(checked) + " random graphs match the oracle");
  return c.outcome();
}

// ---------------------------------------------------------------- 5

si::CovariateSet transmit_only(std::size_t n, std::vector<double> x) {
  si::CovariateSet cov;
  cov.transmissibility = si::CovariateTable(n, 1);
  cov.transmissibility.values = std::move(x);
  return cov;
}

Outcome likelihood_oracle() {
  Checks c;
  {
    const Graph g = make_graph(2, {{0, 1}});
    const auto d = si::DistanceProvider::hops(g);
    const auto cov = transmit_only(2, {0.7, 0.3});
    si::SIParams p{0.002, 0.9, 1.3, {}, {1.5}};
    si::EventLog log;
    log.initial_infected = {0};
    log.events = {{0.83, 1}};
    log.horizon = 0.83;
    const double h = 1.5 * 0.7 * 0.9 + 0.002;
    const double err = std::abs(si::log_likelihood(p, log, g, cov, d) - (std::log(h) - h * 0.83));
    c.expect(err <= 1e-12, "2-node closed form off by " + fmt(err));
  }
  {
    const Graph g = make_graph(3, {{0, 1}, {0, 2}});
    const auto d = si::DistanceProvider::hops(g);
    const auto cov = transmit_only(3, {1.0, 0.4, 0.6});
    si::SIParams p{0.01, 0.5, 1.0, {}, {2.0}};
    si::EventLog log;
    log.initial_infected = {0};
    log.events = {{0.7, 1}, {1.5, 2}};
    log.horizon = 2.0;
    const double err = std::abs(si::log_likelihood(p, log, g, cov, d) - -2.2020993382936638343);
    c.expect(err <= 1e-10, "3-node golden value off by " + fmt(err));
  }
  Rng rng = make_rng(501);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = gen::erdos_renyi(12 + uniform_index(rng, 20), 0.3, rng());
    const auto d = si::DistanceProvider::hops(g);
    si::CovariateSet cov = si::centrality_covariates(g);
    cov.edge = si::CovariateTable(g.edge_count(), 1);
    for (auto& v : cov.edge.values) v = uniform01(rng);
    si::SIParams p;
    p.zeta = 0.01 * uniform01(rng);
    p.alpha = 0.1 + uniform01(rng);
    p.gamma = 3 * uniform01(rng);
    p.phi = {uniform01(rng), uniform01(rng), uniform01(rng)};
    p.theta = {uniform01(rng)};
    Rng sim = make_rng(rng());
    const std::vector<NodeId> init{0};
    const auto log = si::simulate_si(g, p, cov, d, init, {.horizon = 3.0 + 5 * uniform01(rng)}, sim);
    const double k = 0.1 + 10 * uniform01(rng);
    si::SIParams q = p;
    for (auto& x : q.phi) x *= k;
    q.alpha /= k;
    for (auto& x : q.theta) x /= k;
    const double err =
        std::abs(si::log_likelihood(q, log, g, cov, d) - si::log_likelihood(p, log, g, cov, d));
    worst = std::max(worst, err);
  }
  c.expect(worst <= 1e-10, "scaling identity off by " + fmt(worst));
  c.note("scaling identity worst error " + fmt(worst, 2));
  return c.outcome();
}

// ---------------------------------------------------------------- 6

Outcome simulate_then_infer() {
  Checks c;
  const Graph g = gen::erdos_renyi(100, 0.05, 601);
  const si::CovariateSet cov = si::centrality_covariates(g);
  const auto d = si::DistanceProvider::hops(g);
  si::SIParams truth;
  truth.zeta = 1e-4;
  truth.alpha = 0.05;
  truth.gamma = 2.0;
  truth.phi = {1.0, 1.0, 1.0};
  const si::ParameterLayout layout(3, 0);

  mcmc::PriorSpec prior;
  prior.add("zeta", mcmc::Prior::exponential(1e-4));
  prior.add("alpha", mcmc::Prior::uniform(0.001, 5.0));
  prior.add("gamma", mcmc::Prior::uniform(0.0, 10.0));
  for (const char* name : {"phi1", "phi2", "phi3"}) prior.add(name, mcmc::Prior::uniform(0.0, 5.0));

  mcmc::ChainOptions opts;
  opts.iterations = 20000;
  opts.burn_in = 2000;
  opts.init = std::vector<double>{1e-3, 0.5, 1.0, 0.5, 0.5, 0.5};

  std::array<int, 3> covered{};
  const std::array<double, 3> want{truth.zeta, truth.alpha, truth.gamma};
  const std::array<std::string, 3> names{"zeta", "alpha", "gamma"};
  std::string intervals;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    Rng rng = make_rng(derive_seed(602, rep));
    const NodeId first = static_cast<NodeId>(uniform_index(rng, g.node_count()));
    si::SimulationOptions sim;
    sim.horizon = std::numeric_limits<double>::infinity();
    sim.max_infected = 80;
    const si::EventLog log = si::simulate_si(g, truth, cov, d, {&first, 1}, sim, rng);
    if (log.stop != si::StopReason::target_reached) {
      c.expect(false, "replicate " + std::to_string(rep) + " did not reach 80% infection");
      continue;
    }
    const mcmc::LogLikelihood ll = [&](std::span<const double> x) {
      return si::log_likelihood(layout.unpack(x), log, g, cov, d);
    };
    const auto chains = mcmc::run_chains(prior, ll, opts, 2, derive_seed(603, rep));
    const auto summary = mcmc::posterior_summary(chains);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& s = summary[k];
      if (s.ci_lo <= want[k] && want[k] <= s.ci_hi) ++covered[k];
    }
    intervals += (rep ? " " : "") + std::string("alpha[") + fmt(summary[1].ci_lo, 3) + "," +
                 fmt(summary[1].ci_hi, 3) + "]";
  }
  for (std::size_t k = 0; k < 3; ++k) {
    c.expect(covered[k] >= 4, names[k] + " covered in " + std::to_string(covered[k]) + "/5");
  }
  c.note("covered zeta " + std::to_string(covered[0]) + "/5, alpha " +
         std::to_string(covered[1]) + "/5, gamma " + std::to_string(covered[2]) + "/5; " +
         intervals);
  return c.outcome();
}

// ---------------------------------------------------------------- 7

std::vector<double> post_burn_in(const mcmc::Chain& chain) {
  std::vector<double> x;
  for (std::size_t w = chain.burn_in(); w < chain.iterations(); ++w) x.push_back(chain.sample(w)[0]);
  return x;
}

Outcome mcmc_sanity() {
  Checks c;
  {
    mcmc::PriorSpec p;
    p.add("x", mcmc::Prior::uniform(0.0, 1.0));
    const mcmc::LogLikelihood flat = [](std::span<const double>) { return 0.0; };
    mcmc::ChainOptions o;
    o.iterations = 50000;
    o.burn_in = 5000;
    Rng rng = make_rng(701);
    const auto x = post_burn_in(mcmc::run_chain(p, flat, o, rng));
    const double m = stats::mean(x), v = stats::variance(x);
    c.expect(std::abs(m - 0.5) <= 0.02, "prior recovery mean " + fmt(m));
    c.expect(std::abs(v - 1.0 / 12.0) <= 0.01, "prior recovery variance " + fmt(v));
    c.note("uniform: mean " + fmt(m) + ", var " + fmt(v));
  }
  {
    mcmc::PriorSpec p;
    p.add("x", mcmc::Prior::uniform(-50.0, 50.0));
    const mcmc::LogLikelihood normal = [](std::span<const double> x) {
      return -0.5 * x[0] * x[0];
    };
    mcmc::ChainOptions o;
    o.iterations = 100000;
    o.burn_in = 10000;
    Rng rng = make_rng(702);
    const auto x = post_burn_in(mcmc::run_chain(p, normal, o, rng));
    const double m = stats::mean(x), v = stats::variance(x);
    c.expect(std::abs(m) <= 0.05, "normal target mean " + fmt(m));
    c.expect(std::abs(v - 1.0) <= 0.1, "normal target variance " + fmt(v));
    c.note("normal: mean " + fmt(m) + ", var " + fmt(v));
  }
  return c.outcome();
}

// ---------------------------------------------------------------- 8

std::vector<double> normal_sample(Rng& rng, std::size_t n, double mu) {
  std::normal_distribution<double> z(mu, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = z(rng);
  return x;
}

Outcome ad_calibration() {
  Checks c;
  Rng rng = make_rng(801);
  std::size_t rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> s;
    for (int k = 0; k < 3; ++k) s.push_back(normal_sample(rng, 50, 0.0));
    if (stats::ad_k_sample(s).p_value < 0.05) ++rejected;
  }
  const double size = static_cast<double>(rejected) / 1000.0;
  c.expect(std::abs(size - 0.05) <= 0.02, "size " + fmt(size));

  std::size_t powered = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = stats::ad_k_sample({normal_sample(rng, 200, 0.0), normal_sample(rng, 200, 5.0)});
    if (r.p_value < 0.05) ++powered;
  }
  const double power = static_cast<double>(powered) / 200.0;
  c.expect(power > 0.99, "power " + fmt(power));

  std::size_t agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double shift = 0.9 * static_cast<double>(trial % 4) / 3.0;
    const std::vector<std::vector<double>> s{normal_sample(rng, 25, 0.0),
                                             normal_sample(rng, 25, shift)};
    const bool reject = stats::ad_k_sample(s).p_value < 0.05;
    const bool oracle_reject = oracle::ad_permutation_p(s, 10000, rng()) < 0.05;
    if (reject == oracle_reject) ++agree;
  }
  const double agreement = static_cast<double>(agree) / 200.0;
  c.expect(agreement >= 0.98, "permutation agreement " + fmt(agreement));
  c.note("size " + fmt(size) + ", power " + fmt(power) + ", agreement " + fmt(agreement));
  return c.outcome();
}

// ---------------------------------------------------------------- 9

Outcome ethereum() {
  const fs::path path = fs::path(NETDIFF_FIXTURE_DIR) / "ethereum.csv";
  if (!fs::exists(path)) return {Status::skip, "no fixture at " + path.string()};
  Checks c;
  const Graph giant = giant_component(io::read_edge_list(path));
  c.expect(giant.node_count() == 627 && giant.edge_count() == 666,
           "giant component " + std::to_string(giant.node_count()) + " nodes / " +
               std::to_string(giant.edge_count()) + " edges");
  kt::KTParams p;
  p.tau = 0.40;
  p.steps = 500;
  const auto mean_curve = [&](kt::SeedKind k, std::uint64_t seed) {
    return stats::infection_bands(experiment::kt_ensemble(giant, p, k, 100, seed)).mean;
  };
  const auto random = mean_curve(kt::SeedKind::random, 901);
  const auto degree = mean_curve(kt::SeedKind::top_degree, 902);
  const auto between = mean_curve(kt::SeedKind::top_betweenness, 903);
  for (std::size_t t = 50; t <= 400; ++t) {
    c.expect(random[t] < degree[t] && random[t] < between[t],
             "random seeding not lowest at t=" + std::to_string(t));
  }
  const auto ad = stats::ad_k_sample({random, degree, between});
  c.expect(ad.p_value < 0.01, "AD p-value " + fmt(ad.p_value));
  c.note("giant " + std::to_string(giant.node_count()) + "/" +
         std::to_string(giant.edge_count()) + ", AD p " + fmt(ad.p_value));
  return c.outcome();
}

// ---------------------------------------------------------------- 10

template <typename F>
std::string bytes(F&& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

// Every pipeline serialized to text, from one seed.
std::vector<std::pair<std::string, std::string>> pipelines(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> out;
  const Graph g = gen::delaunay(150, gen::PointDistribution::standard_normal, seed);
  out.emplace_back("generate", bytes([&](std::ostream& o) {
                     io::write_edge_list(o, g);
                     io::write_coordinates(o, g);
                   }));
  out.emplace_back("metrics", bytes([&](std::ostream& o) {
                     for (double v : betweenness_centrality(g).values) o << io::format_double(v) << "\n";
                   }));
  kt::KTParams p;
  p.steps = 80;
  p.tau = 0.3;
  const auto e = experiment::kt_ensemble(g, p, kt::SeedKind::random, 40, seed);
  out.emplace_back("simulate-kt", bytes([&](std::ostream& o) {
                     io::write_curve(o, stats::infection_bands(e));
                     Rng rng = make_rng(seed);
                     io::write_curve(o, stats::bootstrap_bands(e, 200, rng));
                   }));
  out.emplace_back("motifs", bytes([&](std::ostream& o) {
                     for (auto n : motif::census(g).counts) o << n << ",";
                   }));
  const si::CovariateSet cov = si::centrality_covariates(g);
  const auto d = si::DistanceProvider::euclidean(g);
  si::SIParams sp{1e-3, 0.05, 1.5, {}, {1, 1, 1}};
  Rng rng = make_rng(seed);
  const NodeId first = 0;
  const si::EventLog log =
      si::simulate_si(g, sp, cov, d, {&first, 1}, {.horizon = 1e9, .max_infected = 60}, rng);
  out.emplace_back("simulate-si", bytes([&](std::ostream& o) { io::write_event_log(o, log, g); }));
  mcmc::PriorSpec prior;
  prior.add("zeta", mcmc::Prior::exponential(1e-4));
  prior.add("alpha", mcmc::Prior::uniform(0.001, 5.0));
  prior.add("gamma", mcmc::Prior::uniform(0.0, 10.0));
  for (const char* name : {"phi1", "phi2", "phi3"}) prior.add(name, mcmc::Prior::uniform(0.0, 5.0));
  const si::ParameterLayout layout(3, 0);
  mcmc::ChainOptions opts;
  opts.iterations = 1500;
  opts.burn_in = 300;
  const auto chains = mcmc::run_chains(
      prior,
      [&](std::span<const double> x) { return si::log_likelihood(layout.unpack(x), log, g, cov, d); },
      opts, 3, seed);
  out.emplace_back("infer-si", bytes([&](std::ostream& o) {
                     for (const auto& ch : chains)
                       for (std::size_t w = 0; w < ch.iterations(); ++w)
                         for (double v : ch.sample(w)) o << io::format_double(v) << ",";
                   }));
  out.emplace_back("ad-test", bytes([&](std::ostream& o) {
                     const auto early = e.at_step(20), late = e.at_step(60);
                     const auto r = stats::ad_k_sample({{early.begin(), early.end()},
                                                        {late.begin(), late.end()}});
                     o << io::format_double(r.statistic) << "," << io::format_double(r.p_value);
                   }));
  experiment::MotifSpeedConfig cfg;
  cfg.block_sizes = {40, 40, 40};
  cfg.pw = 0.15;
  cfg.pb_grid = experiment::linear_grid(0.005, 0.05, 4);
  cfg.runs = 4;
  cfg.kt.steps = 100;
  const auto table = experiment::motif_speed_experiment(cfg, seed);
  out.emplace_back("motif-speed", bytes([&](std::ostream& o) {
                     for (const auto& row : table.rows)
                       o << io::format_double(row.mean_corr) << "," << io::format_double(row.sd_corr) << "\n";
                   }));
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Checks c;
  setenv("NETDIFF_THREADS", "1", 1);
  const auto serial = pipelines(1001);
  setenv("NETDIFF_THREADS", "4", 1);
  const auto parallel = pipelines(1001);
  const auto again = pipelines(1001);
  unsetenv("NETDIFF_THREADS");
  for (std::size_t i = 0; i < serial.size(); ++i) {
    c.expect(serial[i].second == again[i].second, serial[i].first + " differs on rerun");
    c.expect(serial[i].second == parallel[i].second,
             serial[i].first + " depends on the thread count");
  }
  std::string checked = std::to_string(serial.size()) + " library pipelines";

#ifdef NETDIFF_CLI_PATH
  const fs::path work = fs::temp_directory_path() / ("netdiff_acceptance_" + std::to_string(::getpid()));
  const std::string fix = NETDIFF_FIXTURE_DIR;
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"generate --kind grg --n 200 --r 0.1 --seed 3 --out {}/g.csv --coords {}/c.csv", {"g.csv", "c.csv"}},
      {"simulate-kt --edges " + fix + "/small_edges.csv --runs 30 --steps 50 --seed 4 --out {}/k.csv", {"k.csv"}},
      {"motifs --edges " + fix + "/small_edges.csv --out {}/m.json", {"m.json"}},
      {"metrics --edges " + fix + "/small_edges.csv --out {}/x.json", {"x.json"}},
      {"simulate-si --edges " + fix + "/small_edges.csv --alpha 0.5 --gamma 1 --zeta 0.001 "
       "--target-fraction 0.6 --seed 5 --out {}/e.csv", {"e.csv"}},
      {"infer-si --edges " + fix + "/small_edges.csv --events " + fix + "/small_events.csv --covariates " +
           fix + "/small_covariates.csv --priors " + fix + "/priors.cfg --iters 800 --burnin 200 --seed 6 "
           "--trace {}/t.csv --summary {}/s.json", {"t.csv", "s.json"}},
      {"stats ad-test --inputs " + fix + "/sample_a.csv " + fix + "/sample_b.csv --out {}/a.json", {"a.json"}},
      {"experiment motif-speed --runs 3 --pw 0.15 --pb-grid 0.005:0.05:4 --blocks 3x40 --steps 100 "
       "--seed 7 --out {}/t1.csv", {"t1.csv"}},
  };
  for (const auto& [args, files] : runs) {
    std::string first_out;
    for (const char* tag : {"a", "b"}) {
      const fs::path dir = work / tag;
      fs::create_directories(dir);
      std::string cmd = args;
      for (std::size_t at; (at = cmd.find("{}")) != std::string::npos;) cmd.replace(at, 2, dir.string());
      cmd = std::string(NETDIFF_CLI_PATH) + " -q " + cmd + " > /dev/null 2>&1";
      c.expect(std::system(cmd.c_str()) == 0, "CLI failed: " + args.substr(0, args.find(' ')));
    }
    for (const auto& f : files) {
      const std::string a = read_file(work / "a" / f), b = read_file(work / "b" / f);
      c.expect(!a.empty() && a == b, "CLI output " + f + " differs between runs");
    }
  }
  fs::remove_all(work);
  checked += ", " + std::to_string(runs.size()) + " CLI pipelines";
#endif
  c.note(checked + " byte-identical");
  return c.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "generator calibration", 120, generator_calibration},
      {2, "KT topology ordering", 900, topology_ordering},
      {3, "motif/speed correlations", 1800, motif_speed},
      {4, "motif census correctness", 60, census_correctness},
      {5, "SI likelihood oracle", 60, likelihood_oracle},
      {6, "simulate-then-infer calibration", 3600, simulate_then_infer},
      {7, "MCMC sanity", 120, mcmc_sanity},
      {8, "AD-test calibration", 300, ad_calibration},
      {9, "Ethereum fixture", 600, ethereum},
      {10, "determinism", 600, determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& cr : criteria) {
    if (!only.empty() && !only.count(cr.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.status == Status::pass && secs > cr.budget_seconds) {
      o = {Status::fail, "took " + fmt(secs) + " s, budget " + fmt(cr.budget_seconds) + " s"};
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::printf("[%s] %2d %-32s %8.1f s  %s\n", tag, cr.id, cr.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (o.status == Status::fail) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
