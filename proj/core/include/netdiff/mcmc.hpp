#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netdiff/rng.hpp"

namespace netdiff::mcmc {

class Prior {
 public:
  enum class Kind { uniform, exponential };

  static Prior uniform(double lo, double hi);
  static Prior exponential(double rate);

  Kind kind() const noexcept { return kind_; }
  double lo() const noexcept { return a_; }
  double hi() const noexcept { return b_; }
  double rate() const noexcept { return rate_; }

  bool in_support(double x) const;
  // -inf outside the support.
  double log_density(double x) const;
  double sample(Rng& rng) const;
  double standard_deviation() const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::uniform;
  double a_ = 0.0;
  double b_ = 1.0;
  double rate_ = 1.0;
};

struct PriorSpec {
  std::vector<std::string> names;
  std::vector<Prior> priors;

  std::size_t size() const noexcept { return priors.size(); }
  void add(std::string name, Prior p);
  double log_density(std::span<const double> theta) const;
  // Throws unless names and priors line up.
  void validate() const;
};

using LogLikelihood = std::function<double(std::span<const double>)>;

// log L(theta) + log P(theta); the likelihood is not evaluated outside the
// prior support.
double log_posterior(std::span<const double> theta, const PriorSpec& prior,
                     const LogLikelihood& loglik);

struct ChainState {
  std::vector<double> theta;
  double log_post = 0.0;
};

// One random-walk Metropolis step with independent Gaussian increments.
// A uniform is always drawn and the proposal is accepted iff
// log u < log_post(proposal) - log_post(current). Returns acceptance.
bool mh_step(ChainState& state, std::span<const double> scales,
             const PriorSpec& prior, const LogLikelihood& loglik, Rng& rng);

// The same move restricted to coordinate k.
bool mh_coordinate_step(ChainState& state, std::size_t k, double scale,
                        const PriorSpec& prior, const LogLikelihood& loglik, Rng& rng);

struct ChainOptions {
  std::size_t iterations = 20000;
  std::size_t burn_in = 2000;
  // Starting proposal standard deviations; empty means a tenth of each
  // prior's standard deviation.
  std::vector<double> initial_scales;
  // Starting point; when absent it is drawn from the prior until the
  // log posterior is finite (at most 10000 draws).
  std::optional<std::vector<double>> init;
  // Tune each coordinate's scale during burn-in towards target_acceptance,
  // then freeze.
  bool adapt = true;
  double target_acceptance = 0.3;
};

class Chain {
 public:
  Chain(std::vector<std::string> names, std::size_t burn_in);

  std::size_t dimension() const noexcept { return names_.size(); }
  std::size_t iterations() const noexcept { return log_posts_.size(); }
  std::size_t burn_in() const noexcept { return burn_in_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::span<const double> sample(std::size_t w) const {
    return {samples_.data() + w * dimension(), dimension()};
  }
  double log_post(std::size_t w) const { return log_posts_[w]; }
  // Whether step w moved the chain at all.
  bool accepted(std::size_t w) const { return accepted_[w] != 0; }
  const std::vector<double>& proposal_scales() const noexcept { return scales_; }

  // Accepted coordinate moves over all proposed ones, post burn-in.
  double acceptance_rate() const;

  // `accepted` counts the coordinate moves accepted in this step.
  void push(std::span<const double> theta, double log_post, std::size_t accepted);
  void set_proposal_scales(std::vector<double> s) { scales_ = std::move(s); }

 private:
  std::vector<std::string> names_;
  std::size_t burn_in_;
  std::vector<double> samples_;
  std::vector<double> log_posts_;
  std::vector<std::uint32_t> accepted_;
  std::vector<double> scales_;
};

// One iteration is a sweep of mh_coordinate_step over every coordinate.
Chain run_chain(const PriorSpec& prior, const LogLikelihood& loglik,
                const ChainOptions& opts, Rng& rng);

// Independent chains seeded with derive_seed(seed, c), run in parallel.
std::vector<Chain> run_chains(const PriorSpec& prior, const LogLikelihood& loglik,
                              const ChainOptions& opts, std::size_t chains,
                              std::uint64_t seed);

struct ParameterSummary {
  std::string name;
  double mean = 0.0;
  double ci_lo = 0.0;  // 2.5% quantile
  double ci_hi = 0.0;  // 97.5% quantile
};

// Pools the post-burn-in samples of all chains (at least 100 in total).
std::vector<ParameterSummary> posterior_summary(std::span<const Chain> chains);
std::vector<ParameterSummary> posterior_summary(const Chain& chain);

}  // namespace netdiff::mcmc
