#include "netdiff/stats.hpp"

#include <algorithm>
#include <cmath>

#include "netdiff/error.hpp"

namespace netdiff::stats {

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("percentile level must lie in [0, 1]");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  return percentile_sorted(values, q);
}

double mean(std::span<const double> x) {
  if (x.empty()) throw Error("mean of an empty sample");
  // Centred on the first value, so a constant sample returns it exactly.
  double shift = 0.0;
  for (double v : x) shift += v - x[0];
  return x[0] + shift / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw Error("variance needs at least two values");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

void CurveEnsemble::set_run(std::size_t i, std::span<const double> curve) {
  if (i >= n_) throw Error("run index out of range");
  if (curve.size() != t_) throw Error("curve length does not match the ensemble");
  for (std::size_t t = 0; t < t_; ++t) (*this)(t, i) = curve[t];
}

BandedCurve infection_bands(const CurveEnsemble& e) {
  if (e.runs() < 2) throw Error("confidence bands need at least two runs");
  BandedCurve b;
  b.method = "percentile";
  std::vector<double> row;
  for (std::size_t t = 0; t < e.timesteps(); ++t) {
    const auto r = e.at_step(t);
    row.assign(r.begin(), r.end());
    std::sort(row.begin(), row.end());
    // The mean cannot leave [min, max], but rounding can push it a hair
    // past a band that collapses onto identical values.
    const double lo = percentile_sorted(row, 0.025);
    const double hi = percentile_sorted(row, 0.975);
    b.mean.push_back(std::clamp(mean(row), lo, hi));
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  }
  return b;
}

BandedCurve bootstrap_bands(const CurveEnsemble& e, std::size_t resamples,
                            Rng& rng) {
  const std::size_t n = e.runs();
  if (n < 2) throw Error("confidence bands need at least two runs");
  if (resamples < 2) throw Error("bootstrap needs at least two resamples");
  const std::size_t steps = e.timesteps();

  // means[b * steps + t] = mean curve of bootstrap replicate b at t.
  std::vector<double> means(resamples * steps, 0.0);
  std::vector<std::size_t> pick(n);
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& p : pick) p = uniform_index(rng, n);
    for (std::size_t t = 0; t < steps; ++t) {
      double s = 0.0;
      for (std::size_t p : pick) s += e(t, p);
      means[b * steps + t] = s / static_cast<double>(n);
    }
  }

  BandedCurve out;
  out.method = "bootstrap";
  std::vector<double> col(resamples);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t b = 0; b < resamples; ++b) col[b] = means[b * steps + t];
    std::sort(col.begin(), col.end());
    const double lo = percentile_sorted(col, 0.025);
    const double hi = percentile_sorted(col, 0.975);
    out.mean.push_back(std::clamp(mean(e.at_step(t)), lo, hi));
    out.lo.push_back(lo);
    out.hi.push_back(hi);
  }
  return out;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation needs equal-length inputs");
  if (x.size() < 2) throw Error("correlation needs at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace netdiff::stats
