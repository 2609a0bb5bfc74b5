#include "netdiff/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "netdiff/error.hpp"
#include "netdiff/parallel.hpp"

namespace netdiff::experiment {

stats::CurveEnsemble kt_ensemble(const Graph& g, const kt::KTParams& params,
                                 kt::SeedKind seeding, std::size_t runs,
                                 std::uint64_t seed) {
  params.validate();
  if (runs == 0) throw Error("need at least one run");
  stats::CurveEnsemble e(params.steps + 1, runs);
  parallel_for(runs, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(seed, i));
    const kt::DiffusionTrace trace = kt::kt_simulate(g, params, seeding, rng);
    e.set_run(i, trace.eta());
  });
  return e;
}

stats::CurveEnsemble kt_generated_ensemble(const gen::GeneratorSpec& spec,
                                           const kt::KTParams& params,
                                           kt::SeedKind seeding, std::size_t runs,
                                           std::uint64_t seed) {
  spec.validate();
  params.validate();
  if (runs == 0) throw Error("need at least one run");
  stats::CurveEnsemble e(params.steps + 1, runs);
  parallel_for(runs, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(seed, i));
    const Graph g = gen::generate(spec, rng());
    const kt::DiffusionTrace trace = kt::kt_simulate(g, params, seeding, rng);
    e.set_run(i, trace.eta());
  });
  return e;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw Error("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

void MotifSpeedConfig::validate() const {
  if (pb_grid.size() < 2) {
    throw Error("p_b grid needs at least two points to correlate over");
  }
  if (runs < 2) throw Error("motif/speed experiment needs at least two runs");
  if (block_sizes.empty()) throw Error("need at least one block");
  kt.validate();
}

MotifSpeedResult motif_speed_experiment(const MotifSpeedConfig& config,
                                        std::uint64_t seed) {
  config.validate();
  const std::size_t grid = config.pb_grid.size();
  const std::size_t jobs = config.runs * grid;

  struct Point {
    double nu = 0.0;
    std::array<double, motif::kMotifCount> conc{};
    bool has_motifs = false;
  };
  std::vector<Point> points(jobs);
  parallel_for(jobs, [&](std::size_t job) {
    const double pb = config.pb_grid[job % grid];
    const auto probs =
        gen::uniform_block_matrix(config.block_sizes.size(), config.pw, pb);
    Rng rng = make_rng(derive_seed(seed, job));
    const Graph g = gen::stochastic_block_model(config.block_sizes, probs, rng());
    const kt::DiffusionTrace trace = kt::kt_simulate(g, config.kt, config.seeding, rng);
    Point& p = points[job];
    p.nu = kt::diffusion_speed(trace).nu;
    const motif::MotifCensus c = motif::census(g);
    if (c.total() > 0) {
      p.conc = motif::concentration(c);
      p.has_motifs = true;
    }
  });

  std::array<std::vector<double>, motif::kMotifCount> corr;
  MotifSpeedResult result;
  result.runs = config.runs;
  std::vector<double> nu(grid), conc(grid);
  for (std::size_t r = 0; r < config.runs; ++r) {
    bool usable = true;
    for (std::size_t g = 0; g < grid; ++g) {
      const Point& p = points[r * grid + g];
      usable = usable && p.has_motifs;
      nu[g] = p.nu;
    }
    const bool nu_varies =
        std::any_of(nu.begin(), nu.end(), [&](double v) { return v != nu[0]; });
    if (!usable || !nu_varies) {
      spdlog::warn("run {}: diffusion speed or motif census degenerate, skipped", r);
      ++result.skipped_runs;
      continue;
    }
    for (std::size_t m = 0; m < motif::kMotifCount; ++m) {
      for (std::size_t g = 0; g < grid; ++g) conc[g] = points[r * grid + g].conc[m];
      const bool varies = std::any_of(conc.begin(), conc.end(),
                                      [&](double v) { return v != conc[0]; });
      if (!varies) {
        spdlog::debug("run {}: {} concentration constant, skipped", r,
                      motif::to_string(motif::kAllMotifs[m]));
        continue;
      }
      corr[m].push_back(stats::pearson_correlation(nu, conc));
    }
  }

  bool any = false;
  for (std::size_t m = 0; m < motif::kMotifCount; ++m) {
    MotifCorrelation& row = result.rows[m];
    row.motif = motif::kAllMotifs[m];
    row.valid_runs = corr[m].size();
    if (corr[m].size() < 2) {
      spdlog::warn("{}: fewer than two runs with a defined correlation",
                   motif::to_string(row.motif));
      row.mean_corr = row.sd_corr = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    any = true;
    row.mean_corr = stats::mean(corr[m]);
    row.sd_corr = std::sqrt(stats::variance(corr[m]));
  }
  if (!any) throw Error("fewer than two valid runs for every motif");
  return result;
}

}  // namespace netdiff::experiment
