#include <algorithm>
#include <array>
#include <cmath>

#include "netdiff/error.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::stats {

namespace {

// Critical points of the standardized statistic for k - 1 = infinity
// plus 1/sqrt(k-1) and 1/(k-1) corrections, at these upper-tail levels.
constexpr std::array<double, 7> kLevels = {0.25, 0.1, 0.05, 0.025, 0.01, 0.005, 0.001};
constexpr std::array<double, 7> kB0 = {0.675, 1.281, 1.645, 1.96, 2.326, 2.573, 3.085};
constexpr std::array<double, 7> kB1 = {-0.245, 0.25, 0.678, 1.149, 1.822, 2.364, 3.615};
constexpr std::array<double, 7> kB2 = {-0.105, -0.305, -0.362, -0.391, -0.396, -0.345, -0.154};

void check_samples(const std::vector<std::vector<double>>& samples) {
  if (samples.size() < 2) throw Error("Anderson-Darling test needs k >= 2 samples");
  for (const auto& s : samples) {
    if (s.size() < 2) throw Error("each Anderson-Darling sample needs >= 2 values");
    for (double v : s) {
      if (!std::isfinite(v)) throw Error("Anderson-Darling samples must be finite");
    }
  }
}

// Least-squares quadratic through (x_i, y_i); returns c0 + c1 x + c2 x^2
// coefficients.
std::array<double, 3> quadratic_fit(const std::array<double, 7>& x,
                                    const std::array<double, 7>& y) {
  // Normal equations, solved by Cramer's rule on the 3x3 system.
  double s[5] = {0, 0, 0, 0, 0};
  double t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * y[i];
      p *= x[i];
    }
  }
  const double m[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  std::array<double, 3> c{};
  for (int col = 0; col < 3; ++col) {
    double r[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) r[i][j] = j == col ? t[i] : m[i][j];
    }
    c[col] = det3(r) / d;
  }
  return c;
}

}  // namespace

double ad_statistic(const std::vector<std::vector<double>>& samples) {
  check_samples(samples);
  const std::size_t k = samples.size();
  std::vector<double> pooled;
  for (const auto& s : samples) pooled.insert(pooled.end(), s.begin(), s.end());
  std::sort(pooled.begin(), pooled.end());
  const auto big_n = static_cast<double>(pooled.size());

  std::vector<double> distinct;
  std::vector<double> mult;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    distinct.push_back(pooled[i]);
    mult.push_back(static_cast<double>(j - i));
    i = j;
  }
  if (distinct.size() < 2) throw Error("no variation");
  const std::size_t levels = distinct.size();

  // B_aj = B_j - l_j / 2, the pooled midrank count below z*_j.
  std::vector<double> b_a(levels);
  double cum = 0.0;
  for (std::size_t j = 0; j < levels; ++j) {
    cum += mult[j];
    b_a[j] = cum - mult[j] / 2.0;
  }

  double a2 = 0.0;
  std::vector<double> sorted;
  for (std::size_t i = 0; i < k; ++i) {
    sorted = samples[i];
    std::sort(sorted.begin(), sorted.end());
    const auto n_i = static_cast<double>(sorted.size());
    double inner = 0.0;
    std::size_t pos = 0;
    double below = 0.0;  // M_ij of the previous level
    for (std::size_t j = 0; j < levels; ++j) {
      double f = 0.0;
      while (pos < sorted.size() && sorted[pos] == distinct[j]) {
        ++f;
        ++pos;
      }
      below += f;
      const double m_a = below - f / 2.0;
      const double num = big_n * m_a - n_i * b_a[j];
      const double den = b_a[j] * (big_n - b_a[j]) - big_n * mult[j] / 4.0;
      inner += mult[j] * num * num / den;
    }
    a2 += inner / n_i;
  }
  return a2 * (big_n - 1.0) / (big_n * big_n);
}

ADResult ad_k_sample(const std::vector<std::vector<double>>& samples) {
  ADResult r;
  r.a2 = ad_statistic(samples);

  const auto k = static_cast<double>(samples.size());
  std::size_t total = 0;
  double h_sum = 0.0;  // H = sum 1/n_i
  for (const auto& s : samples) {
    total += s.size();
    h_sum += 1.0 / static_cast<double>(s.size());
  }
  const auto n = static_cast<double>(total);
  if (total < 4) throw Error("Anderson-Darling test needs N >= 4 observations");

  double h = 0.0;  // sum_{i=1}^{N-1} 1/i
  for (std::size_t i = 1; i < total; ++i) h += 1.0 / static_cast<double>(i);
  // g = sum_{i=1}^{N-2} sum_{j=i+1}^{N-1} 1/((N-i) j), grouped by j.
  double g = 0.0;
  double inv_prefix = 0.0;  // sum_{i=1}^{j-1} 1/(N-i)
  for (std::size_t j = 2; j < total; ++j) {
    inv_prefix += 1.0 / (n - static_cast<double>(j - 1));
    g += inv_prefix / static_cast<double>(j);
  }

  const double a = (4 * g - 6) * (k - 1) + (10 - 6 * g) * h_sum;
  const double b = (2 * g - 4) * k * k + 8 * h * k + (2 * g - 14 * h - 4) * h_sum -
                   8 * h + 4 * g - 6;
  const double c = (6 * h + 2 * g - 2) * k * k + (4 * h - 4 * g + 6) * k +
                   (2 * h - 6) * h_sum + 4 * h;
  const double d = (2 * h + 6) * k * k - 4 * h * k;
  const double sigma2 = (a * n * n * n + b * n * n + c * n + d) /
                        ((n - 1.0) * (n - 2.0) * (n - 3.0));
  r.statistic = (r.a2 - (k - 1.0)) / std::sqrt(sigma2);

  const double m = k - 1.0;
  std::array<double, 7> critical{};
  std::array<double, 7> log_level{};
  for (std::size_t i = 0; i < critical.size(); ++i) {
    critical[i] = kB0[i] + kB1[i] / std::sqrt(m) + kB2[i] / m;
    log_level[i] = std::log(kLevels[i]);
  }
  if (r.statistic < critical.front()) {
    r.p_value = kLevels.front();
    r.p_capped = true;
  } else if (r.statistic > critical.back()) {
    r.p_value = kLevels.back();
    r.p_capped = true;
  } else {
    const auto coef = quadratic_fit(critical, log_level);
    const double x = r.statistic;
    r.p_value = std::exp(coef[0] + coef[1] * x + coef[2] * x * x);
  }
  return r;
}

}  // namespace netdiff::stats
