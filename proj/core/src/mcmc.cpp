#include "netdiff/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "netdiff/error.hpp"
#include "netdiff/parallel.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::mcmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxInitDraws = 10000;

// Running mean and variance.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double sd() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0; }
};

std::vector<double> draw_init(const PriorSpec& prior, const LogLikelihood& loglik,
                              Rng& rng) {
  std::vector<double> theta(prior.size());
  for (std::size_t attempt = 0; attempt < kMaxInitDraws; ++attempt) {
    for (std::size_t k = 0; k < prior.size(); ++k) {
      theta[k] = prior.priors[k].sample(rng);
    }
    if (std::isfinite(log_posterior(theta, prior, loglik))) return theta;
  }
  throw Error("no initial state with finite log posterior in 10000 prior draws");
}

}  // namespace

Prior Prior::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error("uniform prior needs finite a < b");
  }
  Prior p;
  p.kind_ = Kind::uniform;
  p.a_ = lo;
  p.b_ = hi;
  return p;
}

Prior Prior::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error("exponential prior needs rate > 0");
  }
  Prior p;
  p.kind_ = Kind::exponential;
  p.a_ = 0.0;
  p.b_ = std::numeric_limits<double>::infinity();
  p.rate_ = rate;
  return p;
}

bool Prior::in_support(double x) const {
  return x >= a_ && x <= b_;
}

double Prior::log_density(double x) const {
  if (!in_support(x)) return kNegInf;
  if (kind_ == Kind::uniform) return -std::log(b_ - a_);
  return std::log(rate_) - rate_ * x;
}

double Prior::sample(Rng& rng) const {
  const double u = uniform01(rng);
  if (kind_ == Kind::uniform) return a_ + (b_ - a_) * u;
  return -std::log1p(-u) / rate_;
}

double Prior::standard_deviation() const {
  if (kind_ == Kind::uniform) return (b_ - a_) / std::sqrt(12.0);
  return 1.0 / rate_;
}

std::string Prior::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::uniform) {
    os << "Uniform(" << a_ << ", " << b_ << ")";
  } else {
    os << "Exp(" << rate_ << ")";
  }
  return os.str();
}

void PriorSpec::add(std::string name, Prior p) {
  names.push_back(std::move(name));
  priors.push_back(p);
}

double PriorSpec::log_density(std::span<const double> theta) const {
  if (theta.size() != priors.size()) {
    throw Error("parameter vector length does not match the prior");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    s += priors[k].log_density(theta[k]);
    if (s == kNegInf) return kNegInf;
  }
  return s;
}

void PriorSpec::validate() const {
  if (priors.empty()) throw Error("prior specification is empty");
  if (names.size() != priors.size()) {
    throw Error("prior names and distributions do not line up");
  }
}

double log_posterior(std::span<const double> theta, const PriorSpec& prior,
                     const LogLikelihood& loglik) {
  const double lp = prior.log_density(theta);
  if (lp == kNegInf) return kNegInf;
  const double ll = loglik(theta);
  if (std::isnan(ll)) return kNegInf;
  return lp + ll;
}

bool mh_step(ChainState& state, std::span<const double> scales,
             const PriorSpec& prior, const LogLikelihood& loglik, Rng& rng) {
  const std::size_t d = state.theta.size();
  if (scales.size() != d) throw Error("proposal scale count mismatch");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> proposal(d);
  for (std::size_t k = 0; k < d; ++k) {
    proposal[k] = state.theta[k] + scales[k] * normal(rng);
  }
  const double lp = log_posterior(proposal, prior, loglik);
  const double u = uniform01(rng);
  if (lp == kNegInf) return false;
  if (std::log(u) < lp - state.log_post) {
    state.theta = std::move(proposal);
    state.log_post = lp;
    return true;
  }
  return false;
}

bool mh_coordinate_step(ChainState& state, std::size_t k, double scale,
                        const PriorSpec& prior, const LogLikelihood& loglik, Rng& rng) {
  if (k >= state.theta.size()) throw Error("coordinate out of range");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> proposal = state.theta;
  proposal[k] += scale * normal(rng);
  const double lp = log_posterior(proposal, prior, loglik);
  const double u = uniform01(rng);
  if (lp == kNegInf) return false;
  if (std::log(u) < lp - state.log_post) {
    state.theta[k] = proposal[k];
    state.log_post = lp;
    return true;
  }
  return false;
}

Chain::Chain(std::vector<std::string> names, std::size_t burn_in)
    : names_(std::move(names)), burn_in_(burn_in) {}

void Chain::push(std::span<const double> theta, double log_post, std::size_t accepted) {
  if (theta.size() != dimension()) throw Error("sample dimension mismatch");
  if (accepted > dimension()) throw Error("more accepted moves than coordinates");
  samples_.insert(samples_.end(), theta.begin(), theta.end());
  log_posts_.push_back(log_post);
  accepted_.push_back(static_cast<std::uint32_t>(accepted));
}

double Chain::acceptance_rate() const {
  if (iterations() <= burn_in_) return 0.0;
  std::size_t a = 0;
  for (std::size_t w = burn_in_; w < iterations(); ++w) a += accepted_[w];
  return static_cast<double>(a) /
         static_cast<double>((iterations() - burn_in_) * dimension());
}

Chain run_chain(const PriorSpec& prior, const LogLikelihood& loglik,
                const ChainOptions& opts, Rng& rng) {
  prior.validate();
  if (opts.iterations <= opts.burn_in) {
    throw Error("iterations must exceed burn-in");
  }
  const std::size_t d = prior.size();

  std::vector<double> base = opts.initial_scales;
  if (base.empty()) {
    for (const Prior& p : prior.priors) base.push_back(0.1 * p.standard_deviation());
  }
  if (base.size() != d) throw Error("initial scale count mismatch");

  ChainState state;
  state.theta = opts.init ? *opts.init : draw_init(prior, loglik, rng);
  if (state.theta.size() != d) throw Error("initial state dimension mismatch");
  state.log_post = log_posterior(state.theta, prior, loglik);
  if (!std::isfinite(state.log_post)) {
    throw Error("initial state has non-finite log posterior");
  }

  // Burn-in adaptation, per coordinate: Robbins-Monro on the log scale,
  // first from the initial scales, then (from the midpoint) from 2.38 times
  // the spread each coordinate showed since the first quarter.
  std::vector<double> log_scale(d);
  for (std::size_t k = 0; k < d; ++k) log_scale[k] = std::log(base[k]);
  std::vector<Welford> spread(d);
  std::vector<std::size_t> adapt_step(d, 0);
  const std::size_t record_from = opts.burn_in / 4;
  const std::size_t switch_at = opts.burn_in / 2;
  std::vector<double> scales = base;

  Chain chain(prior.names, opts.burn_in);
  for (std::size_t w = 0; w < opts.iterations; ++w) {
    std::size_t moved = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const bool accepted = mh_coordinate_step(state, k, scales[k], prior, loglik, rng);
      moved += accepted ? 1 : 0;
      if (!opts.adapt || w >= opts.burn_in || base[k] == 0.0) continue;
      const double gain = 1.0 / std::sqrt(static_cast<double>(++adapt_step[k]));
      log_scale[k] += gain * ((accepted ? 1.0 : 0.0) - opts.target_acceptance);
      scales[k] = std::exp(log_scale[k]);
    }
    chain.push(state.theta, state.log_post, moved);

    if (!opts.adapt || w >= opts.burn_in) continue;
    if (w >= record_from) {
      for (std::size_t k = 0; k < d; ++k) spread[k].add(state.theta[k]);
    }
    if (w + 1 == switch_at) {
      for (std::size_t k = 0; k < d; ++k) {
        const double s = spread[k].sd();
        if (s > 0.0 && base[k] != 0.0) {
          log_scale[k] = std::log(2.38 * s);
          scales[k] = 2.38 * s;
          adapt_step[k] = 0;
        }
      }
    }
  }
  chain.set_proposal_scales(scales);
  spdlog::debug("chain done: acceptance {:.3f} after burn-in",
                chain.acceptance_rate());
  return chain;
}

std::vector<Chain> run_chains(const PriorSpec& prior, const LogLikelihood& loglik,
                              const ChainOptions& opts, std::size_t chains,
                              std::uint64_t seed) {
  if (chains == 0) throw Error("need at least one chain");
  std::vector<std::optional<Chain>> out(chains);
  parallel_for(chains, [&](std::size_t c) {
    Rng rng = make_rng(derive_seed(seed, c));
    out[c] = run_chain(prior, loglik, opts, rng);
  });
  std::vector<Chain> result;
  result.reserve(chains);
  for (auto& c : out) result.push_back(std::move(*c));
  return result;
}

std::vector<ParameterSummary> posterior_summary(std::span<const Chain> chains) {
  if (chains.empty()) throw Error("no chains to summarize");
  const std::size_t d = chains.front().dimension();
  std::size_t kept = 0;
  for (const Chain& c : chains) {
    if (c.dimension() != d) throw Error("chains have different dimensions");
    kept += c.iterations() - std::min(c.iterations(), c.burn_in());
  }
  if (kept < 100) throw Error("posterior summary needs at least 100 post-burn-in samples");

  std::vector<ParameterSummary> out(d);
  std::vector<double> column;
  column.reserve(kept);
  for (std::size_t k = 0; k < d; ++k) {
    column.clear();
    for (const Chain& c : chains) {
      for (std::size_t w = c.burn_in(); w < c.iterations(); ++w) {
        column.push_back(c.sample(w)[k]);
      }
    }
    out[k].name = chains.front().names()[k];
    out[k].mean = stats::mean(column);
    std::sort(column.begin(), column.end());
    out[k].ci_lo = stats::percentile_sorted(column, 0.025);
    out[k].ci_hi = stats::percentile_sorted(column, 0.975);
  }
  return out;
}

std::vector<ParameterSummary> posterior_summary(const Chain& chain) {
  return posterior_summary(std::span<const Chain>(&chain, 1));
}

}  // namespace netdiff::mcmc
