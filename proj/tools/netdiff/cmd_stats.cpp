#include <nlohmann/json.hpp>

#include "context.hpp"
#include "netdiff/error.hpp"
#include "netdiff/experiment.hpp"
#include "netdiff/io.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::cli {
namespace {

struct AdTestArgs {
  std::vector<std::string> inputs;
  std::string out = "-";
};

void run_ad_test(const AdTestArgs& a, RunContext& ctx) {
  if (a.inputs.size() < 2) throw Error("ad-test needs at least two --inputs");
  std::vector<std::vector<double>> samples;
  for (const auto& path : a.inputs) {
    ctx.input(path);
    samples.push_back(io::read_sample(path));
  }
  const stats::ADResult r = stats::ad_k_sample(samples);
  nlohmann::ordered_json j;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  ctx.output(a.out, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
}

struct MotifSpeedArgs {
  experiment::MotifSpeedConfig config;
  std::string blocks = "3x200";
  std::string pb_grid = "0.001:0.01:10";
  std::string strategy = "degree";
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_motif_speed(MotifSpeedArgs a, RunContext& ctx) {
  a.config.block_sizes = parse_blocks(a.blocks);
  a.config.pb_grid = parse_grid(a.pb_grid);
  a.config.seeding = kt::parse_seed_kind(a.strategy);
  const experiment::MotifSpeedResult r =
      experiment::motif_speed_experiment(a.config, ctx.seed(a.seed));
  ctx.set("skipped_runs", std::to_string(r.skipped_runs));
  ctx.output(a.out, [&](std::ostream& o) {
    o << "motif,mean_corr,sd_corr\n";
    for (const auto& row : r.rows) {
      o << motif::to_string(row.motif) << "," << io::format_double(row.mean_corr) << ","
        << io::format_double(row.sd_corr) << "\n";
    }
  });
}

}  // namespace

void add_stats_commands(CLI::App& root, std::vector<Command>& out) {
  CLI::App* stats_app = root.add_subcommand("stats", "Statistical tests");
  stats_app->require_subcommand(1);
  {
    auto a = std::make_shared<AdTestArgs>();
    CLI::App* s = stats_app->add_subcommand("ad-test", "k-sample Anderson-Darling test");
    s->add_option("--inputs", a->inputs, "One sample CSV per group")
        ->required()
        ->check(CLI::ExistingFile);
    s->add_option("--out", a->out, "Result JSON (- for stdout)");
    out.push_back({s, [a](RunContext& ctx) { run_ad_test(*a, ctx); }});
  }

  CLI::App* exp_app = root.add_subcommand("experiment", "Batch experiments");
  exp_app->require_subcommand(1);
  {
    auto a = std::make_shared<MotifSpeedArgs>();
    CLI::App* s = exp_app->add_subcommand(
        "motif-speed", "Correlate motif concentrations with diffusion speed over p_b");
    s->add_option("--pw", a->config.pw, "Within-block edge probability");
    s->add_option("--pb-grid", a->pb_grid, "Between-block grid lo:hi:count");
    s->add_option("--blocks", a->blocks, "Block sizes, e.g. 3x200 or 100,200");
    s->add_option("--runs", a->config.runs, "Independent runs");
    s->add_option("--tau", a->config.kt.tau, "Adoption threshold");
    s->add_option("--delta", a->config.kt.delta, "Spontaneous adoption probability");
    s->add_option("--beta", a->config.kt.beta, "Blocked fraction");
    s->add_option("--eta0", a->config.kt.eta0, "Initially adopted fraction");
    s->add_option("--steps", a->config.kt.steps, "Maximum number of timesteps");
    s->add_option("--steady", a->config.kt.steady_fraction, "Steady-state fraction for speed");
    s->add_option("--seed-strategy", a->strategy, "random | degree | betweenness");
    s->add_option("--seed", a->seed, "Master seed");
    s->add_option("--out", a->out, "Table CSV (- for stdout)")->required();
    out.push_back({s, [a](RunContext& ctx) { run_motif_speed(*a, ctx); }});
  }
}

}  // namespace netdiff::cli
