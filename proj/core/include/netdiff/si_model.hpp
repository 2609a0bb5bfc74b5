#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::si {

struct SIParams {
  double zeta = 0.0;   // spark rate
  double alpha = 0.0;  // kernel scale
  double gamma = 0.0;  // distance exponent
  std::vector<double> theta;         // edge covariate coefficients
  std::vector<double> phi;           // transmissibility coefficients
  std::vector<double> omega = {1.0};  // susceptibility: intercept, then slopes
};

// Row-major per-node or per-edge covariate table.
struct CovariateTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  CovariateTable() = default;
  CovariateTable(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  double& at(std::size_t i, std::size_t k) { return values[i * cols + k]; }
  double at(std::size_t i, std::size_t k) const { return values[i * cols + k]; }
};

struct CovariateSet {
  CovariateTable susceptibility;    // X(i) for the susceptibility term
  CovariateTable transmissibility;  // X(j) for the transmissibility term
  CovariateTable edge;              // C_ij, one row per edge id

  // Throws netdiff::Error when shapes disagree with the graph or params.
  void validate(const Graph& g, const SIParams& p) const;
};

// Max-normalized degree, betweenness and clustering centralities, one row
// per node, used as transmissibility covariates; susceptibility is left
// intercept-only.
CovariateSet centrality_covariates(const Graph& g);

enum class DistanceMode { hops, euclidean };

DistanceMode parse_distance_mode(std::string_view name);
std::string_view to_string(DistanceMode mode);

// Distances along graph edges. The kernel is only evaluated on edges, so
// the hop distance of a connected pair is always 1.
class DistanceProvider {
 public:
  static DistanceProvider hops(const Graph& g);
  // Needs node coordinates on g.
  static DistanceProvider euclidean(const Graph& g);
  static DistanceProvider make(const Graph& g, DistanceMode mode);

  DistanceMode mode() const noexcept { return mode_; }
  double edge_distance(EdgeId e) const { return d_[e]; }
  std::span<const double> edge_distances() const noexcept { return d_; }

 private:
  DistanceMode mode_ = DistanceMode::hops;
  std::vector<double> d_;
};

struct InfectionEvent {
  double time = 0.0;
  NodeId node = 0;

  friend bool operator==(const InfectionEvent&, const InfectionEvent&) = default;
};

enum class StopReason { horizon, all_infected, extinct, target_reached };

std::string_view to_string(StopReason r);

struct EventLog {
  std::vector<InfectionEvent> events;  // strictly increasing times
  std::vector<NodeId> initial_infected;
  double horizon = 0.0;
  StopReason stop = StopReason::horizon;

  // Throws netdiff::Error on repeated nodes, ties, times outside
  // [0, horizon] or nodes >= node_count.
  void validate(std::size_t node_count) const;
};

// psi_S(i) = omega_0 + sum_k omega_k X_k(i); throws "negative susceptibility".
double susceptibility(NodeId i, const CovariateSet& cov, std::span<const double> omega);
// psi_T(j) = sum_k phi_k X_k(j); throws "negative transmissibility".
double transmissibility(NodeId j, const CovariateSet& cov, std::span<const double> phi);

// alpha d^-gamma + sum_m theta_m C_ij^(m) on edges, exactly 0 elsewhere.
double kernel(const Graph& g, NodeId i, NodeId j, const DistanceProvider& d,
              const CovariateSet& cov, double alpha, double gamma,
              std::span<const double> theta);

// Infection hazard of susceptible node i given the infectious set.
double rate(const Graph& g, NodeId i, const std::vector<bool>& infectious,
            const SIParams& p, const CovariateSet& cov, const DistanceProvider& d);

struct SimulationOptions {
  double horizon = 1.0;
  // Stop once this many nodes (initial ones included) are infected.
  std::optional<std::size_t> max_infected;
};

// Exact Gillespie simulation. Stopping early at max_infected sets the log
// horizon to the last event time.
EventLog simulate_si(const Graph& g, const SIParams& p, const CovariateSet& cov,
                     const DistanceProvider& d, std::span<const NodeId> initial,
                     const SimulationOptions& opts, Rng& rng);

// Exact log-likelihood of a fully observed log: every event contributes
// log lambda_i(t) - v(t) * gap, and the interval after the last event up
// to the horizon contributes its survival term. Returns -inf when an
// observed event has zero hazard.
double log_likelihood(const SIParams& p, const EventLog& log, const Graph& g,
                      const CovariateSet& cov, const DistanceProvider& d);

// Flat parameter vector (zeta, alpha, gamma, phi..., theta...) used by
// the sampler. omega stays fixed at the template's value.
class ParameterLayout {
 public:
  ParameterLayout(std::size_t phi_count, std::size_t theta_count)
      : phi_(phi_count), theta_(theta_count) {}

  std::size_t size() const noexcept { return 3 + phi_ + theta_; }
  std::vector<std::string> names() const;
  std::vector<double> pack(const SIParams& p) const;
  SIParams unpack(std::span<const double> x, const SIParams& fixed = {}) const;

 private:
  std::size_t phi_;
  std::size_t theta_;
};

}  // namespace netdiff::si
