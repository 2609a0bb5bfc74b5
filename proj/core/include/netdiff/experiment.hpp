#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "netdiff/generators.hpp"
#include "netdiff/graph.hpp"
#include "netdiff/kt.hpp"
#include "netdiff/motif.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::experiment {

// `runs` cascades on one fixed graph; run i draws from
// make_rng(derive_seed(seed, i)). Rows are timesteps 0..steps.
stats::CurveEnsemble kt_ensemble(const Graph& g, const kt::KTParams& params,
                                 kt::SeedKind seeding, std::size_t runs,
                                 std::uint64_t seed);

// As above but every run draws a fresh graph from `spec` first, from the
// same per-run stream.
stats::CurveEnsemble kt_generated_ensemble(const gen::GeneratorSpec& spec,
                                           const kt::KTParams& params,
                                           kt::SeedKind seeding, std::size_t runs,
                                           std::uint64_t seed);

// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

struct MotifSpeedConfig {
  std::vector<std::size_t> block_sizes = {200, 200, 200};
  double pw = 0.03;
  std::vector<double> pb_grid = linear_grid(0.001, 0.01, 10);
  std::size_t runs = 1000;
  kt::KTParams kt;
  kt::SeedKind seeding = kt::SeedKind::top_degree;

  void validate() const;
};

struct MotifCorrelation {
  motif::MotifKind motif = motif::MotifKind::path4;
  double mean_corr = 0.0;
  double sd_corr = 0.0;
  // Runs in which the correlation was defined; below 2 the row is NaN.
  std::size_t valid_runs = 0;
};

struct MotifSpeedResult {
  std::array<MotifCorrelation, motif::kMotifCount> rows;
  std::size_t runs = 0;
  std::size_t skipped_runs = 0;  // diffusion speed constant over the grid
};

// One run generates an SBM graph per grid value of p_b, runs the cascade,
// and correlates diffusion speed with each motif concentration across the
// grid. Correlations are then averaged over runs. Grid point g of run r
// uses derive_seed(seed, r * grid_size + g).
MotifSpeedResult motif_speed_experiment(const MotifSpeedConfig& config,
                                        std::uint64_t seed);

}  // namespace netdiff::experiment
