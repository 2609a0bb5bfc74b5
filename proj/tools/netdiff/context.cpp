#include "context.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "netdiff/error.hpp"
#include "netdiff/experiment.hpp"
#include "netdiff/io.hpp"
#include "netdiff/metrics.hpp"

namespace netdiff::cli {

RunContext::RunContext(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)),
      argv_(std::move(argv)),
      start_(std::chrono::steady_clock::now()) {}

std::uint64_t RunContext::seed(const std::optional<std::uint64_t>& given) {
  if (given) {
    seed_ = *given;
  } else {
    std::random_device rd;
    seed_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    seed_generated_ = true;
    argv_.push_back("--seed");
    argv_.push_back(std::to_string(seed_));
    config_["seed"] = std::to_string(seed_);
    spdlog::info("no --seed given, using {}", seed_);
  }
  return seed_;
}

void RunContext::output(const fs::path& p,
                        const std::function<void(std::ostream&)>& body) {
  if (p == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  io::atomic_write(p, body);
  outputs_.push_back(p);
  spdlog::info("wrote {}", p.string());
}

void RunContext::capture_config(const CLI::App& sub) {
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? " " : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    config_[name] = value;
  }
}

void RunContext::finish() {
  io::ResultMetadata m;
  m.tool_version = std::string(io::tool_version());
  m.command = command_;
  m.argv = argv_;
  m.config = config_;
  m.seed = seed_;
  m.seed_generated = seed_generated_;
  m.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  for (const auto& p : inputs_) m.input_digests[p.string()] = io::sha256_file(p);
  for (const auto& p : outputs_) m.output_digests[p.string()] = io::sha256_file(p);
  for (const auto& p : outputs_) io::write_metadata(p, m);
}

Graph load_graph(RunContext& ctx, const fs::path& edges,
                 const std::optional<fs::path>& coords, bool giant) {
  ctx.input(edges);
  Graph g = io::read_edge_list(edges, false);
  if (coords) {
    ctx.input(*coords);
    g = io::read_coordinates(*coords, g);
  }
  if (giant) g = giant_component(g);
  spdlog::info("{}: {} nodes, {} edges", edges.string(), g.node_count(), g.edge_count());
  return g;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_blocks(const std::string& text) {
  auto to_size = [&](const std::string& s) {
    const double v = io::parse_double(s);
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error("invalid block size in '" + text + "'");
    }
    return static_cast<std::size_t>(v);
  };
  if (const auto x = text.find('x'); x != std::string::npos) {
    const std::size_t k = to_size(text.substr(0, x));
    return std::vector<std::size_t>(k, to_size(text.substr(x + 1)));
  }
  std::vector<std::size_t> out;
  for (const auto& part : split_list(text)) out.push_back(to_size(part));
  if (out.empty()) throw Error("empty block list");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw Error("grid must look like lo:hi:count, got '" + text + "'");
  const double count = io::parse_double(parts[2]);
  if (!(count >= 1.0) || count != static_cast<double>(static_cast<std::size_t>(count))) {
    throw Error("grid count must be a positive integer");
  }
  return experiment::linear_grid(io::parse_double(parts[0]), io::parse_double(parts[1]),
                         static_cast<std::size_t>(count));
}

}  // namespace netdiff::cli
