#include <cmath>

#include <nlohmann/json.hpp>

#include "context.hpp"
#include "netdiff/error.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/io.hpp"
#include "netdiff/metrics.hpp"
#include "netdiff/motif.hpp"

namespace netdiff::cli {
namespace {

struct GenerateArgs {
  std::string kind;
  std::optional<std::size_t> n;
  std::optional<double> p, r, pw, pb;
  std::optional<std::string> blocks;
  std::string points = "normal";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> coords;
};

void run_generate(const GenerateArgs& a, RunContext& ctx) {
  gen::GeneratorSpec spec;
  spec.kind = gen::parse_graph_kind(a.kind);
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw Error("--kind " + a.kind + " requires " + what);
  };
  switch (spec.kind) {
    case gen::GraphKind::erdos_renyi:
      need(a.n && a.p, "--n and --p");
      spec.p = *a.p;
      break;
    case gen::GraphKind::geometric:
      need(a.n && a.r, "--n and --r");
      spec.radius = *a.r;
      break;
    case gen::GraphKind::delaunay:
      need(a.n.has_value(), "--n");
      if (a.points == "normal") {
        spec.points = gen::PointDistribution::standard_normal;
      } else if (a.points == "uniform") {
        spec.points = gen::PointDistribution::uniform_unit_square;
      } else {
        throw Error("--points must be normal or uniform");
      }
      break;
    case gen::GraphKind::block_model: {
      need(a.blocks && a.pw && a.pb, "--blocks, --pw and --pb");
      spec.block_sizes = parse_blocks(*a.blocks);
      spec.block_probabilities =
          gen::uniform_block_matrix(spec.block_sizes.size(), *a.pw, *a.pb);
      std::size_t total = 0;
      for (auto s : spec.block_sizes) total += s;
      if (a.n && *a.n != total) throw Error("--n disagrees with the block sizes");
      spec.n = total;
      break;
    }
  }
  if (spec.kind != gen::GraphKind::block_model) spec.n = *a.n;
  if (a.coords && !(spec.kind == gen::GraphKind::geometric ||
                    spec.kind == gen::GraphKind::delaunay)) {
    throw Error("--coords only applies to grg and dt graphs");
  }
  const Graph g = gen::generate(spec, ctx.seed(a.seed));
  ctx.output(a.out, [&](std::ostream& out) { io::write_edge_list(out, g); });
  if (a.coords) {
    ctx.output(*a.coords, [&](std::ostream& out) { io::write_coordinates(out, g); });
  }
}

nlohmann::ordered_json census_json(const motif::MotifCensus& c) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json counts, conc;
  const bool any = c.total() > 0;
  const auto fractions = any ? motif::concentration(c) : std::array<double, motif::kMotifCount>{};
  for (std::size_t m = 0; m < motif::kMotifCount; ++m) {
    const std::string name(motif::to_string(motif::kAllMotifs[m]));
    counts[name] = c.counts[m];
    conc[name] = fractions[m];
  }
  j["counts"] = counts;
  j["concentrations"] = conc;
  j["used_edges"] = c.used_edges.size();
  j["total_edges"] = c.total_edges;
  return j;
}

}  // namespace

void add_graph_commands(CLI::App& root, std::vector<Command>& out) {
  {
    auto a = std::make_shared<GenerateArgs>();
    CLI::App* s = root.add_subcommand("generate", "Draw a random graph");
    s->add_option("--kind", a->kind, "er | grg | dt | sbm")->required();
    s->add_option("--n", a->n, "Node count");
    s->add_option("--p", a->p, "Edge probability (er)");
    s->add_option("--r", a->r, "Connection radius (grg)");
    s->add_option("--blocks", a->blocks, "Block sizes, e.g. 3x200 or 100,200 (sbm)");
    s->add_option("--pw", a->pw, "Within-block probability (sbm)");
    s->add_option("--pb", a->pb, "Between-block probability (sbm)");
    s->add_option("--points", a->points, "Point distribution for dt: normal | uniform");
    s->add_option("--seed", a->seed, "Master seed");
    s->add_option("--out", a->out, "Edge list CSV")->required();
    s->add_option("--coords", a->coords, "Also write node coordinates (grg, dt)");
    out.push_back({s, [a](RunContext& ctx) { run_generate(*a, ctx); }});
  }
  {
    auto edges = std::make_shared<std::string>();
    auto dest = std::make_shared<std::string>("-");
    CLI::App* s = root.add_subcommand("motifs", "Edge-disjoint 4-node motif census");
    s->add_option("--edges", *edges, "Edge list CSV")->required()->check(CLI::ExistingFile);
    s->add_option("--out", *dest, "Census JSON (- for stdout)");
    out.push_back({s, [edges, dest](RunContext& ctx) {
                     const Graph g = load_graph(ctx, *edges);
                     const auto j = census_json(motif::census(g));
                     ctx.output(*dest, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
                   }});
  }
  {
    auto edges = std::make_shared<std::string>();
    auto dest = std::make_shared<std::string>("-");
    CLI::App* s = root.add_subcommand("metrics", "Structural summary of a graph");
    s->add_option("--edges", *edges, "Edge list CSV")->required()->check(CLI::ExistingFile);
    s->add_option("--out", *dest, "Metrics JSON (- for stdout)");
    out.push_back({s, [edges, dest](RunContext& ctx) {
                     const Graph g = load_graph(ctx, *edges);
                     if (g.empty()) throw Error("empty graph");
                     const Graph gc = giant_component(g);
                     nlohmann::ordered_json j;
                     j["nodes"] = g.node_count();
                     j["edges"] = g.edge_count();
                     j["components"] = connected_components(g).size();
                     j["giant_nodes"] = gc.node_count();
                     j["giant_edges"] = gc.edge_count();
                     j["giant_average_path_length"] = average_path_length(gc);
                     j["giant_diameter"] = diameter(gc);
                     double clustering = 0.0;
                     for (double c : clustering_centrality(g).values) clustering += c;
                     j["mean_clustering"] = clustering / static_cast<double>(g.node_count());
                     nlohmann::ordered_json dist;
                     for (const auto& [k, p] : degree_distribution(g)) dist[std::to_string(k)] = p;
                     j["degree_distribution"] = dist;
                     ctx.output(*dest, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
                   }});
  }
}

}  // namespace netdiff::cli
