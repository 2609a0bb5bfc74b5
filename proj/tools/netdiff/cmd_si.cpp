#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "context.hpp"
#include "netdiff/error.hpp"
#include "netdiff/io.hpp"
#include "netdiff/mcmc.hpp"
#include "netdiff/si_model.hpp"

namespace netdiff::cli {
namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split_list(text)) out.push_back(io::parse_double(part));
  return out;
}

struct ModelInputs {
  std::string edges;
  std::optional<std::string> coords;
  std::string distance = "hops";
  std::optional<std::string> covariates;
  std::optional<std::string> edge_cov;
};

void bind_model_inputs(CLI::App* s, ModelInputs& m) {
  s->add_option("--edges", m.edges, "Edge list CSV")->required()->check(CLI::ExistingFile);
  s->add_option("--coords", m.coords, "Node coordinates CSV (euclidean distances)")
      ->check(CLI::ExistingFile);
  s->add_option("--distance", m.distance, "hops | euclidean");
  s->add_option("--covariates", m.covariates,
                "Transmissibility covariates CSV (default: normalized centralities)")
      ->check(CLI::ExistingFile);
  s->add_option("--edge-cov", m.edge_cov, "Edge covariates CSV")->check(CLI::ExistingFile);
}

struct Model {
  Graph g;
  si::CovariateSet cov;
  si::DistanceProvider d;
};

Model load_model(RunContext& ctx, const ModelInputs& m) {
  const si::DistanceMode mode = si::parse_distance_mode(m.distance);
  if (mode == si::DistanceMode::euclidean && !m.coords) {
    throw Error("--distance euclidean requires --coords");
  }
  Model out;
  out.g = load_graph(ctx, m.edges, m.coords);
  if (m.covariates) {
    ctx.input(*m.covariates);
    out.cov.transmissibility = io::read_node_covariates(*m.covariates, out.g);
  } else {
    out.cov = si::centrality_covariates(out.g);
  }
  if (m.edge_cov) {
    ctx.input(*m.edge_cov);
    out.cov.edge = io::read_edge_covariates(*m.edge_cov, out.g);
  }
  out.d = si::DistanceProvider::make(out.g, mode);
  return out;
}

struct SimulateSiArgs {
  ModelInputs model;
  double zeta = 1e-4, alpha = 0.05, gamma = 2.0;
  std::string phi = "1,1,1";
  std::string theta;
  std::optional<std::string> initial;
  std::size_t initial_random = 1;
  double horizon = std::numeric_limits<double>::infinity();
  std::optional<double> target_fraction;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> covariates_out;
};

void run_simulate_si(const SimulateSiArgs& a, RunContext& ctx) {
  const Model m = load_model(ctx, a.model);
  si::SIParams p;
  p.zeta = a.zeta;
  p.alpha = a.alpha;
  p.gamma = a.gamma;
  p.phi = parse_numbers(a.phi);
  p.theta = parse_numbers(a.theta);
  m.cov.validate(m.g, p);

  si::SimulationOptions opts;
  opts.horizon = a.horizon;
  const std::size_t n = m.g.node_count();
  if (a.target_fraction) {
    if (!(*a.target_fraction > 0.0 && *a.target_fraction <= 1.0)) {
      throw Error("--target-fraction must lie in (0, 1]");
    }
    opts.max_infected =
        static_cast<std::size_t>(std::ceil(*a.target_fraction * static_cast<double>(n) - 1e-9));
  } else if (!std::isfinite(a.horizon)) {
    throw Error("give --horizon or --target-fraction");
  }

  Rng rng = make_rng(ctx.seed(a.seed));
  std::vector<NodeId> initial;
  if (a.initial) {
    for (const auto& label : split_list(*a.initial)) {
      const auto v = m.g.find(label);
      if (!v) throw Error("unknown initial node '" + label + "'");
      initial.push_back(*v);
    }
  } else {
    if (a.initial_random > n) throw Error("--initial-random exceeds the node count");
    std::vector<NodeId> pool(n);
    for (NodeId v = 0; v < n; ++v) pool[v] = v;
    for (std::size_t k = 0; k < a.initial_random; ++k) {
      const auto j = k + uniform_index(rng, n - k);
      std::swap(pool[k], pool[j]);
      initial.push_back(pool[k]);
    }
  }

  si::EventLog log = si::simulate_si(m.g, p, m.cov, m.d, initial, opts, rng);
  if (!std::isfinite(log.horizon)) {
    log.horizon = log.events.empty() ? 0.0 : log.events.back().time;
  }
  ctx.set("stop", std::string(si::to_string(log.stop)));
  spdlog::info("{} infections, stopped: {}", log.events.size(), si::to_string(log.stop));
  ctx.output(a.out, [&](std::ostream& o) { io::write_event_log(o, log, m.g); });
  if (a.covariates_out) {
    std::vector<std::string> header{"deg_c", "btw_c", "clust"};
    if (a.model.covariates) {
      header.clear();
      for (std::size_t k = 0; k < m.cov.transmissibility.cols; ++k)
        header.push_back("x" + std::to_string(k + 1));
    }
    ctx.output(*a.covariates_out, [&](std::ostream& o) {
      io::write_node_covariates(o, m.cov.transmissibility, m.g, header);
    });
  }
}

struct InferSiArgs {
  ModelInputs model;
  std::string events;
  std::string priors;
  std::size_t iters = 20000;
  std::size_t burnin = 2000;
  std::size_t chains = 2;
  std::optional<std::string> init;
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string summary;
};

// Prior entries reordered to the sampler's parameter layout.
mcmc::PriorSpec align_priors(const mcmc::PriorSpec& given, const si::ParameterLayout& layout) {
  mcmc::PriorSpec out;
  for (const auto& name : layout.names()) {
    std::size_t found = given.size();
    for (std::size_t i = 0; i < given.size(); ++i)
      if (given.names[i] == name) found = i;
    if (found == given.size()) throw Error("no prior for parameter '" + name + "'");
    out.add(name, given.priors[found]);
  }
  for (const auto& name : given.names) {
    const auto names = layout.names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error("prior given for unknown parameter '" + name + "'");
    }
  }
  return out;
}

void run_infer_si(const InferSiArgs& a, RunContext& ctx) {
  const Model m = load_model(ctx, a.model);
  ctx.input(a.events);
  const si::EventLog log = io::read_event_log(a.events, m.g);
  ctx.input(a.priors);
  const si::ParameterLayout layout(m.cov.transmissibility.cols, m.cov.edge.cols);
  const mcmc::PriorSpec prior = align_priors(io::read_priors(a.priors), layout);

  const mcmc::LogLikelihood loglik = [&](std::span<const double> x) {
    return si::log_likelihood(layout.unpack(x), log, m.g, m.cov, m.d);
  };
  mcmc::ChainOptions opts;
  opts.iterations = a.iters;
  opts.burn_in = a.burnin;
  if (a.init) {
    opts.init = parse_numbers(*a.init);
    if (opts.init->size() != layout.size()) {
      throw Error("--init needs " + std::to_string(layout.size()) + " values");
    }
  }
  const std::vector<mcmc::Chain> chains =
      mcmc::run_chains(prior, loglik, opts, a.chains, ctx.seed(a.seed));

  ctx.output(a.trace, [&](std::ostream& o) {
    for (const auto& name : layout.names()) o << name << ",";
    o << "log_post\n";
    for (const auto& c : chains) {
      for (std::size_t w = c.burn_in(); w < c.iterations(); ++w) {
        for (double v : c.sample(w)) o << io::format_double(v) << ",";
        o << io::format_double(c.log_post(w)) << "\n";
      }
    }
  });

  nlohmann::ordered_json j;
  for (const auto& s : mcmc::posterior_summary(chains)) {
    j[s.name] = {{"mean", s.mean}, {"ci_lo", s.ci_lo}, {"ci_hi", s.ci_hi}};
  }
  double accepted = 0.0;
  for (const auto& c : chains) accepted += c.acceptance_rate();
  j["acceptance_rate"] = accepted / static_cast<double>(chains.size());
  ctx.output(a.summary, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
}

}  // namespace

void add_si_commands(CLI::App& root, std::vector<Command>& out) {
  {
    auto a = std::make_shared<SimulateSiArgs>();
    CLI::App* s = root.add_subcommand("simulate-si", "Simulate an SI epidemic event log");
    bind_model_inputs(s, a->model);
    s->add_option("--zeta", a->zeta, "Spark rate");
    s->add_option("--alpha", a->alpha, "Kernel scale");
    s->add_option("--gamma", a->gamma, "Distance exponent");
    s->add_option("--phi", a->phi, "Transmissibility coefficients, comma separated");
    s->add_option("--theta", a->theta, "Edge covariate coefficients, comma separated");
    auto* init = s->add_option("--initial", a->initial, "Initially infected labels");
    s->add_option("--initial-random", a->initial_random, "Draw this many initial nodes")
        ->excludes(init);
    s->add_option("--horizon", a->horizon, "Observation horizon");
    s->add_option("--target-fraction", a->target_fraction, "Stop once this fraction is infected");
    s->add_option("--seed", a->seed, "Master seed");
    s->add_option("--out", a->out, "Event log CSV")->required();
    s->add_option("--covariates-out", a->covariates_out, "Write the covariates used");
    out.push_back({s, [a](RunContext& ctx) { run_simulate_si(*a, ctx); }});
  }
  {
    auto a = std::make_shared<InferSiArgs>();
    CLI::App* s = root.add_subcommand("infer-si", "Metropolis-Hastings posterior for SI parameters");
    bind_model_inputs(s, a->model);
    s->add_option("--events", a->events, "Event log CSV")->required()->check(CLI::ExistingFile);
    s->add_option("--priors", a->priors, "Prior configuration")->required()->check(CLI::ExistingFile);
    s->add_option("--iters", a->iters, "Iterations per chain");
    s->add_option("--burnin", a->burnin, "Burn-in iterations per chain");
    s->add_option("--chains", a->chains, "Independent chains");
    s->add_option("--init", a->init, "Starting values in layout order");
    s->add_option("--seed", a->seed, "Master seed");
    s->add_option("--trace", a->trace, "Trace CSV")->required();
    s->add_option("--summary", a->summary, "Summary JSON")->required();
    out.push_back({s, [a](RunContext& ctx) { run_infer_si(*a, ctx); }});
  }
}

}  // namespace netdiff::cli
