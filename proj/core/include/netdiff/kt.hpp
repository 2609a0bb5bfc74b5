#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::kt {

struct KTParams {
  double eta0 = 0.01;             // initially adopted fraction
  std::size_t steps = 500;        // maximum number of timesteps k
  double delta = 0.001;           // spontaneous adoption probability per step
  double beta = 0.05;             // blocked fraction
  double tau = 0.30;              // adoption threshold on the adopted share
  double steady_fraction = 0.95;  // eta(s) used by diffusion_speed

  void validate() const;
};

enum class SeedKind { random, top_degree, top_betweenness };

SeedKind parse_seed_kind(std::string_view name);
std::string_view to_string(SeedKind kind);

struct SeedStrategy {
  SeedKind kind = SeedKind::top_degree;
  double fraction = 0.01;
};

enum class NodeState : std::uint8_t { susceptible, adopted, blocked };

// Result of one cascade. Per-step states are derived from each node's
// adoption step, which the monotone dynamics make sufficient.
class DiffusionTrace {
 public:
  static constexpr std::int32_t kNever = -1;

  DiffusionTrace(std::vector<std::int32_t> adoption_step,
                 std::vector<bool> blocked, std::vector<double> eta,
                 double steady_fraction);

  std::size_t node_count() const noexcept { return adoption_step_.size(); }
  // Last timestep T; eta() has T + 1 entries.
  std::size_t steps() const noexcept { return eta_.size() - 1; }

  NodeState state(std::size_t t, NodeId v) const;
  // Timestep at which v adopted (0 for seeds), or kNever.
  std::int32_t adoption_step(NodeId v) const { return adoption_step_[v]; }
  bool blocked(NodeId v) const { return blocked_[v]; }

  std::span<const double> eta() const noexcept { return eta_; }
  // First t with eta(t) >= steady fraction.
  std::optional<std::size_t> steady_step() const noexcept { return steady_step_; }
  double steady_fraction() const noexcept { return steady_fraction_; }

 private:
  std::vector<std::int32_t> adoption_step_;
  std::vector<bool> blocked_;
  std::vector<double> eta_;
  double steady_fraction_;
  std::optional<std::size_t> steady_step_;
};

// ceil(fraction * n) nodes: the most central ones (ties by ascending id)
// or a uniform sample without replacement. Returned sorted.
std::vector<NodeId> select_seeds(const Graph& g, const SeedStrategy& s,
                                 Rng& rng);

// round(beta * n) nodes drawn uniformly from the non-seeds. Returned sorted.
std::vector<NodeId> select_blocked(const Graph& g, double beta,
                                   std::span<const NodeId> seeds, Rng& rng);

// Synchronous threshold cascade. At every step each susceptible, unblocked
// node v adopts when its adopted-neighbour share reaches tau or when a
// uniform draw falls below delta. One uniform is consumed per node per
// step whatever the node's state, so runs sharing a seed see identical
// draws (this is what makes threshold comparisons coupled).
DiffusionTrace kt_run(const Graph& g, const KTParams& params,
                      std::span<const NodeId> seeds,
                      std::span<const NodeId> blocked, Rng& rng);

// Seeds ceil(eta0 * n) nodes, blocks round(beta * n) others and runs the
// cascade, all from one stream.
DiffusionTrace kt_simulate(const Graph& g, const KTParams& params,
                           SeedKind seeding, Rng& rng);

double fraction_infected(const DiffusionTrace& trace, std::size_t t);

enum class SpeedStatus { saturated, unsaturated, already_steady };

struct DiffusionSpeed {
  double nu = 0.0;
  SpeedStatus status = SpeedStatus::saturated;
};

// (eta(s) - eta(0)) / t_s with eta(s) the steady fraction. Without reaching
// it, the average gain over the whole run is reported as unsaturated.
DiffusionSpeed diffusion_speed(const DiffusionTrace& trace);

}  // namespace netdiff::kt
