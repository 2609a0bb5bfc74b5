#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netdiff/rng.hpp"

namespace netdiff::stats {

// q in [0, 1]; linear interpolation between the closest order statistics
// of `sorted` (which must be ascending and non-empty).
double percentile_sorted(std::span<const double> sorted, double q);
double percentile(std::vector<double> values, double q);

double mean(std::span<const double> x);
// Unbiased (n - 1) sample variance.
double variance(std::span<const double> x);

// Infection[t, i]: fraction infected at timestep t in run i.
class CurveEnsemble {
 public:
  CurveEnsemble() = default;
  CurveEnsemble(std::size_t timesteps, std::size_t runs)
      : t_(timesteps), n_(runs), data_(timesteps * runs, 0.0) {}

  std::size_t timesteps() const noexcept { return t_; }
  std::size_t runs() const noexcept { return n_; }

  double& operator()(std::size_t t, std::size_t i) { return data_[t * n_ + i]; }
  double operator()(std::size_t t, std::size_t i) const { return data_[t * n_ + i]; }
  std::span<const double> at_step(std::size_t t) const {
    return {data_.data() + t * n_, n_};
  }
  // Column i must have timesteps() entries.
  void set_run(std::size_t i, std::span<const double> curve);

 private:
  std::size_t t_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct BandedCurve {
  std::vector<double> mean;
  std::vector<double> lo;
  std::vector<double> hi;
  std::string method;  // "percentile" or "bootstrap"
};

// Per-timestep mean with empirical 2.5% / 97.5% percentiles over runs.
// Throws with fewer than two runs.
BandedCurve infection_bands(const CurveEnsemble& e);

// Mean curve with 95% intervals from resampling whole runs with
// replacement; the bands bound the mean, not individual runs.
BandedCurve bootstrap_bands(const CurveEnsemble& e, std::size_t resamples,
                            Rng& rng);

struct ADResult {
  double statistic = 0.0;  // standardized (A2akN - (k - 1)) / sigma
  double p_value = 1.0;
  double a2 = 0.0;         // ties-adjusted A2akN before standardizing
  // p_value was clipped to the tabulated range [0.001, 0.25].
  bool p_capped = false;
};

// Scholz-Stephens k-sample Anderson-Darling test for ties. Needs k >= 2
// samples of size >= 2 each; throws "no variation" when all values agree.
ADResult ad_k_sample(const std::vector<std::vector<double>>& samples);

// Only the unstandardized ties-adjusted statistic (used by permutation
// tests).
double ad_statistic(const std::vector<std::vector<double>>& samples);

// Product-moment correlation; throws on length mismatch or zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace netdiff::stats
