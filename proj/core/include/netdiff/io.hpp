#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/mcmc.hpp"
#include "netdiff/si_model.hpp"
#include "netdiff/stats.hpp"

namespace netdiff::io {

namespace fs = std::filesystem;

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

// Edge lists: one `source,target[,weight]` per line, `#` comments, an
// optional `source,target[,weight]` header. A line holding a single label
// declares a node, which keeps isolated nodes and node order across a
// round trip. Repeated edges keep the last weight; self-loops are skipped
// with a warning. When `weighted` is false any weight column is ignored.
Graph parse_edge_list(std::istream& in, bool weighted = true,
                      std::string_view source = "<input>");
Graph read_edge_list(const fs::path& path, bool weighted = true);
// Writes node declarations, then edges; weights only when some differ
// from 1.
void write_edge_list(std::ostream& out, const Graph& g);

// `label,x,y` rows, matched to g by label; every node needs exactly one.
Graph parse_coordinates(std::istream& in, const Graph& g,
                        std::string_view source = "<input>");
Graph read_coordinates(const fs::path& path, const Graph& g);
void write_coordinates(std::ostream& out, const Graph& g);

// Event logs: `# initial: a b c`, `# horizon: H`, then `time,node_label`
// rows. Rows are sorted by time; exact ties are separated by 1e-9 * rank
// with a warning. Without a horizon line the last event time is used.
si::EventLog parse_event_log(std::istream& in, const Graph& g,
                             std::string_view source = "<input>");
si::EventLog read_event_log(const fs::path& path, const Graph& g);
void write_event_log(std::ostream& out, const si::EventLog& log, const Graph& g);

// `node_label,c1,c2,...` (header optional); every node needs a row and
// all rows the same width.
si::CovariateTable parse_node_covariates(std::istream& in, const Graph& g,
                                         std::string_view source = "<input>");
si::CovariateTable read_node_covariates(const fs::path& path, const Graph& g);
void write_node_covariates(std::ostream& out, const si::CovariateTable& t,
                           const Graph& g,
                           const std::vector<std::string>& header);

// `source,target,value` rows, one per graph edge.
si::CovariateTable parse_edge_covariates(std::istream& in, const Graph& g,
                                         std::string_view source = "<input>");
si::CovariateTable read_edge_covariates(const fs::path& path, const Graph& g);

// `name = Uniform(a, b)` or `name = Exp(rate)` per line, `#` comments.
mcmc::PriorSpec parse_priors(std::istream& in, std::string_view source = "<input>");
mcmc::PriorSpec read_priors(const fs::path& path);

// `timestep,mean_eta,lo95,hi95`; bounds are left empty when absent.
void write_curve(std::ostream& out, const stats::BandedCurve& b);
void write_curve(std::ostream& out, std::span<const double> mean);

// One column per file of a numeric sample (header lines that do not parse
// as a number are skipped, as are `#` comments).
std::vector<double> read_sample(const fs::path& path);

// Writes through a temporary file in the same directory and renames it
// into place once `body` returns, so failures leave no partial output.
void atomic_write(const fs::path& path,
                  const std::function<void(std::ostream&)>& body);

std::string sha256_file(const fs::path& path);

// Sidecar `<output>.meta.json` written next to every output file.
struct ResultMetadata {
  std::string tool_version;
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  bool seed_generated = false;
  double duration_seconds = 0.0;
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256

  std::string to_json() const;
  static ResultMetadata from_json(std::string_view text);
};

fs::path metadata_path(const fs::path& output);
void write_metadata(const fs::path& output, const ResultMetadata& meta);
ResultMetadata read_metadata(const fs::path& meta_file);

std::string_view tool_version();

}  // namespace netdiff::io
