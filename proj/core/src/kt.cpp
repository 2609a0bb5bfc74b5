#include "netdiff/kt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netdiff/error.hpp"
#include "netdiff/metrics.hpp"

namespace netdiff::kt {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

// Partial Fisher-Yates: the first `count` entries become a uniform sample.
std::vector<NodeId> sample_without_replacement(std::vector<NodeId> pool,
                                               std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

void KTParams::validate() const {
  if (!in_unit_interval(eta0) || !in_unit_interval(delta) || !in_unit_interval(beta) ||
      !in_unit_interval(tau) || !in_unit_interval(steady_fraction)) {
    throw Error("eta0, delta, beta, tau and steady_fraction must lie in [0, 1]");
  }
  if (steps < 1) throw Error("steps must be at least 1");
  if (eta0 + beta > 1.0) throw Error("eta0 + beta must not exceed 1");
}

SeedKind parse_seed_kind(std::string_view name) {
  if (name == "random") return SeedKind::random;
  if (name == "degree" || name == "top-degree") return SeedKind::top_degree;
  if (name == "betweenness" || name == "top-betweenness") {
    return SeedKind::top_betweenness;
  }
  throw Error("unknown seed strategy '" + std::string(name) + "'");
}

std::string_view to_string(SeedKind kind) {
  switch (kind) {
    case SeedKind::random: return "random";
    case SeedKind::top_degree: return "degree";
    case SeedKind::top_betweenness: return "betweenness";
  }
  return "?";
}

DiffusionTrace::DiffusionTrace(std::vector<std::int32_t> adoption_step,
                               std::vector<bool> blocked,
                               std::vector<double> eta, double steady_fraction)
    : adoption_step_(std::move(adoption_step)),
      blocked_(std::move(blocked)),
      eta_(std::move(eta)),
      steady_fraction_(steady_fraction) {
  if (eta_.empty()) throw Error("diffusion trace needs at least eta(0)");
  for (std::size_t t = 0; t < eta_.size(); ++t) {
    if (eta_[t] >= steady_fraction_) {
      steady_step_ = t;
      break;
    }
  }
}

NodeState DiffusionTrace::state(std::size_t t, NodeId v) const {
  if (blocked_[v]) return NodeState::blocked;
  const std::int32_t s = adoption_step_[v];
  if (s != kNever && static_cast<std::size_t>(s) <= t) return NodeState::adopted;
  return NodeState::susceptible;
}

std::vector<NodeId> select_seeds(const Graph& g, const SeedStrategy& s,
                                 Rng& rng) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error("empty graph");
  if (!(s.fraction > 0.0 && s.fraction <= 1.0)) {
    throw Error("seed fraction must lie in (0, 1]");
  }
  // The small slack absorbs representation error such as 0.01 * 300.
  const auto count = static_cast<std::size_t>(
      std::ceil(s.fraction * static_cast<double>(n) - 1e-9));
  if (count > n) throw Error("seed count exceeds node count");

  if (s.kind == SeedKind::random) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    return sample_without_replacement(std::move(all), count, rng);
  }

  const CentralityVector c = s.kind == SeedKind::top_degree
                                 ? degree_centrality(g)
                                 : betweenness_centrality(g);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return c.values[a] > c.values[b];
  });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<NodeId> select_blocked(const Graph& g, double beta,
                                   std::span<const NodeId> seeds, Rng& rng) {
  const std::size_t n = g.node_count();
  if (!in_unit_interval(beta)) throw Error("beta must lie in [0, 1]");
  const auto count =
      static_cast<std::size_t>(std::llround(beta * static_cast<double>(n)));
  std::vector<bool> is_seed(n, false);
  for (NodeId v : seeds) is_seed.at(v) = true;
  std::vector<NodeId> pool;
  pool.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!is_seed[v]) pool.push_back(v);
  }
  if (count > pool.size()) {
    throw Error("beta too large: not enough non-seed nodes to block");
  }
  return sample_without_replacement(std::move(pool), count, rng);
}

DiffusionTrace kt_run(const Graph& g, const KTParams& params,
                      std::span<const NodeId> seeds,
                      std::span<const NodeId> blocked, Rng& rng) {
  params.validate();
  const std::size_t n = g.node_count();
  if (n == 0) throw Error("empty graph");

  std::vector<std::int32_t> adopted_at(n, DiffusionTrace::kNever);
  std::vector<bool> is_blocked(n, false);
  for (NodeId v : blocked) is_blocked.at(v) = true;
  std::size_t adopted = 0;
  std::vector<std::uint32_t> adopted_neighbors(n, 0);
  for (NodeId v : seeds) {
    if (is_blocked.at(v)) throw Error("seed and blocked sets overlap");
    if (adopted_at[v] == DiffusionTrace::kNever) {
      adopted_at[v] = 0;
      ++adopted;
      for (NodeId w : g.neighbors(v)) ++adopted_neighbors[w];
    }
  }
  const std::size_t eligible_total =
      n - static_cast<std::size_t>(
              std::count(is_blocked.begin(), is_blocked.end(), true));

  const double total = static_cast<double>(n);
  std::vector<double> eta;
  eta.reserve(params.steps + 1);
  eta.push_back(static_cast<double>(adopted) / total);

  std::vector<NodeId> fresh;
  for (std::size_t t = 1; t <= params.steps; ++t) {
    fresh.clear();
    for (NodeId v = 0; v < n; ++v) {
      const double r = uniform01(rng);
      if (adopted_at[v] != DiffusionTrace::kNever || is_blocked[v]) continue;
      const std::size_t deg = g.degree(v);
      const double share =
          deg == 0 ? 0.0
                   : static_cast<double>(adopted_neighbors[v]) /
                         static_cast<double>(deg);
      if (share >= params.tau || r < params.delta) fresh.push_back(v);
    }
    for (NodeId v : fresh) {
      adopted_at[v] = static_cast<std::int32_t>(t);
      for (NodeId w : g.neighbors(v)) ++adopted_neighbors[w];
    }
    adopted += fresh.size();
    eta.push_back(static_cast<double>(adopted) / total);

    // Nothing can change any more: pad the curve and stop.
    const bool frozen = fresh.empty() && params.delta == 0.0;
    if (frozen || adopted == eligible_total) {
      eta.resize(params.steps + 1, eta.back());
      break;
    }
  }
  return DiffusionTrace(std::move(adopted_at), std::move(is_blocked),
                        std::move(eta), params.steady_fraction);
}

DiffusionTrace kt_simulate(const Graph& g, const KTParams& params,
                           SeedKind seeding, Rng& rng) {
  params.validate();
  const auto seed_nodes = select_seeds(g, {seeding, params.eta0}, rng);
  const auto blocked = select_blocked(g, params.beta, seed_nodes, rng);
  return kt_run(g, params, seed_nodes, blocked, rng);
}

double fraction_infected(const DiffusionTrace& trace, std::size_t t) {
  if (t > trace.steps()) throw Error("timestep out of range");
  return trace.eta()[t];
}

DiffusionSpeed diffusion_speed(const DiffusionTrace& trace) {
  const auto eta = trace.eta();
  if (const auto ts = trace.steady_step()) {
    if (*ts == 0) return {0.0, SpeedStatus::already_steady};
    return {(trace.steady_fraction() - eta[0]) / static_cast<double>(*ts),
            SpeedStatus::saturated};
  }
  const std::size_t k = trace.steps();
  if (k == 0) return {0.0, SpeedStatus::unsaturated};
  return {(eta[k] - eta[0]) / static_cast<double>(k), SpeedStatus::unsaturated};
}

}  // namespace netdiff::kt
