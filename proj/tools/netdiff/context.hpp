#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netdiff/graph.hpp"

namespace netdiff::cli {

namespace fs = std::filesystem;

// Everything recorded about one invocation; becomes the metadata sidecar.
class RunContext {
 public:
  RunContext(std::string command, std::vector<std::string> argv);

  // The explicit seed, or a fresh one that is recorded (and appended to the
  // replay argv) when none was given.
  std::uint64_t seed(const std::optional<std::uint64_t>& given);

  void input(const fs::path& p) { inputs_.push_back(p); }
  // Writes `body` atomically to `p` (or to stdout for "-") and remembers it.
  void output(const fs::path& p, const std::function<void(std::ostream&)>& body);

  void capture_config(const CLI::App& sub);
  void set(const std::string& key, const std::string& value) { config_[key] = value; }

  // Writes a metadata sidecar next to every file output.
  void finish();

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::map<std::string, std::string> config_;
  std::uint64_t seed_ = 0;
  bool seed_generated_ = false;
  std::vector<fs::path> inputs_;
  std::vector<fs::path> outputs_;
  std::chrono::steady_clock::time_point start_;
};

// One subcommand: options are bound on setup, run() executes after parsing.
struct Command {
  CLI::App* app = nullptr;
  std::function<void(RunContext&)> run;
};

void add_graph_commands(CLI::App& root, std::vector<Command>& out);
void add_kt_commands(CLI::App& root, std::vector<Command>& out);
void add_si_commands(CLI::App& root, std::vector<Command>& out);
void add_stats_commands(CLI::App& root, std::vector<Command>& out);

// Edge list plus optional coordinates, both registered as inputs.
Graph load_graph(RunContext& ctx, const fs::path& edges,
                 const std::optional<fs::path>& coords = std::nullopt,
                 bool giant = false);

// "3x200" or "200,200,200".
std::vector<std::size_t> parse_blocks(const std::string& text);
// "lo:hi:count".
std::vector<double> parse_grid(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

// Runs the command line (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace netdiff::cli
