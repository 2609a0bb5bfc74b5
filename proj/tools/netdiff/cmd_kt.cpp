#include "context.hpp"
#include "netdiff/error.hpp"
#include "netdiff/experiment.hpp"
#include "netdiff/io.hpp"
#include "netdiff/kt.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::cli {
namespace {

struct SimulateKtArgs {
  std::string edges;
  bool giant = false;
  kt::KTParams params;
  std::string strategy = "degree";
  std::size_t runs = 1;
  std::string resample = "percentile";
  std::size_t resamples = 1000;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_simulate_kt(const SimulateKtArgs& a, RunContext& ctx) {
  if (a.runs == 0) throw Error("--runs must be at least 1");
  if (a.resample != "percentile" && a.resample != "bootstrap") {
    throw Error("--resample must be percentile or bootstrap");
  }
  const Graph g = load_graph(ctx, a.edges, std::nullopt, a.giant);
  const kt::SeedKind seeding = kt::parse_seed_kind(a.strategy);
  const std::uint64_t seed = ctx.seed(a.seed);
  const stats::CurveEnsemble e = experiment::kt_ensemble(g, a.params, seeding, a.runs, seed);

  if (a.runs == 1) {
    std::vector<double> curve(e.timesteps());
    for (std::size_t t = 0; t < e.timesteps(); ++t) curve[t] = e(t, 0);
    ctx.set("bands", "none");
    ctx.output(a.out, [&](std::ostream& o) { io::write_curve(o, curve); });
    return;
  }
  stats::BandedCurve bands;
  if (a.resample == "bootstrap") {
    // A stream no simulation run uses: runs take derive_seed(seed, i), i < runs.
    Rng rng = make_rng(derive_seed(seed, a.runs));
    bands = stats::bootstrap_bands(e, a.resamples, rng);
  } else {
    bands = stats::infection_bands(e);
  }
  ctx.set("bands", bands.method);
  ctx.output(a.out, [&](std::ostream& o) { io::write_curve(o, bands); });
}

}  // namespace

void add_kt_commands(CLI::App& root, std::vector<Command>& out) {
  auto a = std::make_shared<SimulateKtArgs>();
  a->params.tau = 0.40;
  CLI::App* s = root.add_subcommand("simulate-kt", "Threshold cascade ensemble with 95% bands");
  s->add_option("--edges", a->edges, "Edge list CSV")->required()->check(CLI::ExistingFile);
  s->add_flag("--giant", a->giant, "Restrict to the giant component first");
  s->add_option("--eta0", a->params.eta0, "Initially adopted fraction");
  s->add_option("--steps", a->params.steps, "Maximum number of timesteps");
  s->add_option("--delta", a->params.delta, "Spontaneous adoption probability");
  s->add_option("--beta", a->params.beta, "Blocked fraction");
  s->add_option("--tau", a->params.tau, "Adoption threshold");
  s->add_option("--steady", a->params.steady_fraction, "Steady-state fraction for speed");
  s->add_option("--seed-strategy", a->strategy, "random | degree | betweenness");
  s->add_option("--runs", a->runs, "Independent runs");
  s->add_option("--resample", a->resample, "percentile | bootstrap");
  s->add_option("--bootstrap-resamples", a->resamples, "Resamples for --resample bootstrap");
  s->add_option("--seed", a->seed, "Master seed");
  s->add_option("--out", a->out, "Curve CSV (- for stdout)")->required();
  out.push_back({s, [a](RunContext& ctx) { run_simulate_kt(*a, ctx); }});
}

}  // namespace netdiff::cli
