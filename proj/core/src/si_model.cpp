#include "netdiff/si_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netdiff/error.hpp"
#include "netdiff/metrics.hpp"

namespace netdiff::si {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double edge_kernel(EdgeId e, const DistanceProvider& d, const CovariateSet& cov,
                   double alpha, double gamma, std::span<const double> theta) {
  const double dist = d.edge_distance(e);
  double k;
  if (gamma == 0.0) {
    k = alpha;
  } else {
    if (dist == 0.0 && gamma > 0.0) throw Error("zero distance in kernel");
    k = alpha * std::pow(dist, -gamma);
  }
  if (!theta.empty()) k += dot(theta, cov.edge.row(e));
  return k;
}

// Per-node and per-edge factors of the hazard for one parameter vector.
struct Factors {
  std::vector<double> psi_s;
  std::vector<double> psi_t;
  std::vector<double> kappa;

  Factors(const Graph& g, const SIParams& p, const CovariateSet& cov,
          const DistanceProvider& d) {
    cov.validate(g, p);
    const std::size_t n = g.node_count();
    psi_s.resize(n);
    psi_t.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      psi_s[v] = susceptibility(v, cov, p.omega);
      psi_t[v] = transmissibility(v, cov, p.phi);
    }
    kappa.resize(g.edge_count());
    for (EdgeId e = 0; e < kappa.size(); ++e) {
      kappa[e] = edge_kernel(e, d, cov, p.alpha, p.gamma, p.theta);
    }
  }
};

void require_rate(double r) {
  if (!(r >= 0.0)) throw Error("negative infection rate");
}

}  // namespace

void CovariateSet::validate(const Graph& g, const SIParams& p) const {
  const std::size_t n = g.node_count();
  if (p.omega.empty()) throw Error("omega needs at least the intercept");
  if (p.omega.size() > 1 &&
      (susceptibility.rows != n || susceptibility.cols != p.omega.size() - 1)) {
    throw Error("susceptibility covariates must be n x (len(omega) - 1)");
  }
  if (!p.phi.empty() &&
      (transmissibility.rows != n || transmissibility.cols != p.phi.size())) {
    throw Error("transmissibility covariates must be n x len(phi)");
  }
  if (!p.theta.empty() &&
      (edge.rows != g.edge_count() || edge.cols != p.theta.size())) {
    throw Error("edge covariates must be |E| x len(theta)");
  }
}

CovariateSet centrality_covariates(const Graph& g) {
  const std::size_t n = g.node_count();
  const CentralityVector c[] = {normalize_by_max(degree_centrality(g)),
                                normalize_by_max(betweenness_centrality(g)),
                                normalize_by_max(clustering_centrality(g))};
  CovariateSet cov;
  cov.transmissibility = CovariateTable(n, 3);
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < 3; ++k) cov.transmissibility.at(v, k) = c[k].values[v];
  }
  return cov;
}

DistanceMode parse_distance_mode(std::string_view name) {
  if (name == "hops") return DistanceMode::hops;
  if (name == "euclidean") return DistanceMode::euclidean;
  throw Error("unknown distance mode '" + std::string(name) + "'");
}

std::string_view to_string(DistanceMode mode) {
  return mode == DistanceMode::hops ? "hops" : "euclidean";
}

DistanceProvider DistanceProvider::hops(const Graph& g) {
  DistanceProvider d;
  d.mode_ = DistanceMode::hops;
  d.d_.assign(g.edge_count(), 1.0);
  return d;
}

DistanceProvider DistanceProvider::euclidean(const Graph& g) {
  if (!g.has_coordinates()) {
    throw Error("euclidean distances need node coordinates");
  }
  DistanceProvider d;
  d.mode_ = DistanceMode::euclidean;
  d.d_.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const Point& a = g.coordinate(e.u);
    const Point& b = g.coordinate(e.v);
    d.d_.push_back(std::hypot(a.x - b.x, a.y - b.y));
  }
  return d;
}

DistanceProvider DistanceProvider::make(const Graph& g, DistanceMode mode) {
  return mode == DistanceMode::hops ? hops(g) : euclidean(g);
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::horizon: return "horizon";
    case StopReason::all_infected: return "all_infected";
    case StopReason::extinct: return "extinct";
    case StopReason::target_reached: return "target_reached";
  }
  return "?";
}

void EventLog::validate(std::size_t node_count) const {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw Error("event log horizon must be finite and non-negative");
  }
  std::vector<bool> seen(node_count, false);
  for (NodeId v : initial_infected) {
    if (v >= node_count) throw Error("initial node out of range");
    if (seen[v]) throw Error("node listed twice as initially infected");
    seen[v] = true;
  }
  double last = -1.0;
  for (const InfectionEvent& ev : events) {
    if (ev.node >= node_count) throw Error("event node out of range");
    if (!(ev.time >= 0.0)) throw Error("event times must be non-negative");
    if (ev.time <= last) throw Error("event times must be strictly increasing");
    if (ev.time > horizon) throw Error("event after the observation horizon");
    if (seen[ev.node]) throw Error("node infected twice in event log");
    seen[ev.node] = true;
    last = ev.time;
  }
}

double susceptibility(NodeId i, const CovariateSet& cov,
                      std::span<const double> omega) {
  if (omega.empty()) throw Error("omega needs at least the intercept");
  double s = omega[0];
  if (omega.size() > 1) {
    const auto x = cov.susceptibility.row(i);
    if (x.size() != omega.size() - 1) {
      throw Error("susceptibility covariate length mismatch");
    }
    s += dot(omega.subspan(1), x);
  }
  if (s < 0.0) throw Error("negative susceptibility");
  return s;
}

double transmissibility(NodeId j, const CovariateSet& cov,
                        std::span<const double> phi) {
  if (phi.empty()) return 0.0;
  const auto x = cov.transmissibility.row(j);
  if (x.size() != phi.size()) {
    throw Error("transmissibility covariate length mismatch");
  }
  const double t = dot(phi, x);
  if (t < 0.0) throw Error("negative transmissibility");
  return t;
}

double kernel(const Graph& g, NodeId i, NodeId j, const DistanceProvider& d,
              const CovariateSet& cov, double alpha, double gamma,
              std::span<const double> theta) {
  const auto e = g.edge_id(i, j);
  if (!e) return 0.0;
  return edge_kernel(*e, d, cov, alpha, gamma, theta);
}

double rate(const Graph& g, NodeId i, const std::vector<bool>& infectious,
            const SIParams& p, const CovariateSet& cov, const DistanceProvider& d) {
  double pressure = 0.0;
  const auto nbrs = g.neighbors(i);
  const auto eids = g.incident_edges(i);
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const NodeId j = nbrs[k];
    if (!infectious[j]) continue;
    pressure += transmissibility(j, cov, p.phi) *
                edge_kernel(eids[k], d, cov, p.alpha, p.gamma, p.theta);
  }
  const double r = susceptibility(i, cov, p.omega) * pressure + p.zeta;
  require_rate(r);
  return r;
}

EventLog simulate_si(const Graph& g, const SIParams& p, const CovariateSet& cov,
                     const DistanceProvider& d, std::span<const NodeId> initial,
                     const SimulationOptions& opts, Rng& rng) {
  if (!(opts.horizon >= 0.0)) throw Error("horizon must be non-negative");
  const std::size_t n = g.node_count();
  const Factors f(g, p, cov, d);

  EventLog log;
  log.horizon = opts.horizon;
  std::vector<bool> infected(n, false);
  std::size_t infected_count = 0;
  std::vector<double> pressure(n, 0.0);

  auto infect = [&](NodeId v) {
    infected[v] = true;
    ++infected_count;
    const auto nbrs = g.neighbors(v);
    const auto eids = g.incident_edges(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      pressure[nbrs[k]] += f.psi_t[v] * f.kappa[eids[k]];
    }
  };
  for (NodeId v : initial) {
    if (v >= n) throw Error("initial node out of range");
    if (infected[v]) throw Error("node listed twice as initially infected");
    log.initial_infected.push_back(v);
    infect(v);
  }

  std::vector<double> lambda(n, 0.0);
  double t = 0.0;
  for (;;) {
    if (infected_count == n) {
      log.stop = StopReason::all_infected;
      break;
    }
    if (opts.max_infected && infected_count >= *opts.max_infected) {
      log.stop = StopReason::target_reached;
      log.horizon = log.events.empty() ? 0.0 : log.events.back().time;
      break;
    }
    double v = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      lambda[i] = infected[i] ? 0.0 : f.psi_s[i] * pressure[i] + p.zeta;
      require_rate(lambda[i]);
      v += lambda[i];
    }
    if (v <= 0.0) {
      log.stop = StopReason::extinct;
      break;
    }
    t += -std::log1p(-uniform01(rng)) / v;
    if (t > opts.horizon) {
      log.stop = StopReason::horizon;
      break;
    }
    const double target = uniform01(rng) * v;
    double acc = 0.0;
    NodeId chosen = 0;
    bool found = false;
    for (NodeId i = 0; i < n; ++i) {
      if (lambda[i] <= 0.0) continue;
      acc += lambda[i];
      chosen = i;
      found = true;
      if (target < acc) break;
    }
    if (!found) {
      log.stop = StopReason::extinct;
      break;
    }
    log.events.push_back({t, chosen});
    infect(chosen);
  }
  return log;
}

double log_likelihood(const SIParams& p, const EventLog& log, const Graph& g,
                      const CovariateSet& cov, const DistanceProvider& d) {
  const std::size_t n = g.node_count();
  log.validate(n);
  const Factors f(g, p, cov, d);

  std::vector<bool> infected(n, false);
  std::vector<double> pressure(n, 0.0);
  auto infect = [&](NodeId v) {
    infected[v] = true;
    const auto nbrs = g.neighbors(v);
    const auto eids = g.incident_edges(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      pressure[nbrs[k]] += f.psi_t[v] * f.kappa[eids[k]];
    }
  };
  for (NodeId v : log.initial_infected) infect(v);

  auto total_rate = [&] {
    double v = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (infected[i]) continue;
      const double r = f.psi_s[i] * pressure[i] + p.zeta;
      require_rate(r);
      v += r;
    }
    return v;
  };

  double ll = 0.0;
  double t_prev = 0.0;
  for (const InfectionEvent& ev : log.events) {
    const double v = total_rate();
    const double hazard = f.psi_s[ev.node] * pressure[ev.node] + p.zeta;
    if (!(hazard > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += std::log(hazard) - v * (ev.time - t_prev);
    t_prev = ev.time;
    infect(ev.node);
  }
  ll -= total_rate() * (log.horizon - t_prev);
  return ll;
}

std::vector<std::string> ParameterLayout::names() const {
  std::vector<std::string> out = {"zeta", "alpha", "gamma"};
  for (std::size_t k = 0; k < phi_; ++k) out.push_back("phi" + std::to_string(k + 1));
  for (std::size_t k = 0; k < theta_; ++k) out.push_back("theta" + std::to_string(k + 1));
  return out;
}

std::vector<double> ParameterLayout::pack(const SIParams& p) const {
  if (p.phi.size() != phi_ || p.theta.size() != theta_) {
    throw Error("parameter vector does not match the layout");
  }
  std::vector<double> x = {p.zeta, p.alpha, p.gamma};
  x.insert(x.end(), p.phi.begin(), p.phi.end());
  x.insert(x.end(), p.theta.begin(), p.theta.end());
  return x;
}

SIParams ParameterLayout::unpack(std::span<const double> x,
                                 const SIParams& fixed) const {
  if (x.size() != size()) throw Error("parameter vector does not match the layout");
  SIParams p = fixed;
  p.zeta = x[0];
  p.alpha = x[1];
  p.gamma = x[2];
  p.phi.assign(x.begin() + 3, x.begin() + 3 + static_cast<std::ptrdiff_t>(phi_));
  p.theta.assign(x.begin() + 3 + static_cast<std::ptrdiff_t>(phi_), x.end());
  return p;
}

}  // namespace netdiff::si
