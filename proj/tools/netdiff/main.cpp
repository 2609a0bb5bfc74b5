#include <algorithm>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "context.hpp"
#include "netdiff/error.hpp"
#include "netdiff/io.hpp"

namespace netdiff::cli {
namespace {

int replay(const fs::path& meta_file) {
  const io::ResultMetadata m = io::read_metadata(meta_file);
  if (m.tool_version != io::tool_version()) {
    spdlog::warn("metadata written by netdiff {}, replaying with {}", m.tool_version,
                 io::tool_version());
  }
  spdlog::info("replaying: netdiff {}", fmt::join(m.argv, " "));
  const int status = run_cli(m.argv);
  if (status != 0) return status;
  bool same = true;
  for (const auto& [path, digest] : m.output_digests) {
    const std::string now = io::sha256_file(path);
    const bool ok = now == digest;
    same = same && ok;
    std::cout << (ok ? "identical " : "DIFFERS   ") << path << "\n";
  }
  return same ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"netdiff: diffusion and epidemic models on networks", "netdiff"};
  app.set_version_flag("--version", std::string(io::tool_version()));
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  bool quiet = false, verbose = false;
  app.add_flag("--quiet,-q", quiet, "Only log errors");
  app.add_flag("--verbose,-v", verbose, "Log debug detail");

  std::vector<Command> commands;
  add_graph_commands(app, commands);
  add_kt_commands(app, commands);
  add_si_commands(app, commands);
  add_stats_commands(app, commands);

  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run a recorded invocation and compare outputs");
  std::string meta_file;
  replay_cmd->add_option("meta", meta_file, "A .meta.json sidecar")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  spdlog::set_level(quiet ? spdlog::level::err
                          : verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (replay_cmd->parsed()) return replay(meta_file);
    for (const Command& c : commands) {
      if (!c.app->parsed()) continue;
      std::string name = c.app->get_name();
      if (c.app->get_parent() && c.app->get_parent() != &app) {
        name = c.app->get_parent()->get_name() + " " + name;
      }
      // Global flags are not part of the recorded invocation.
      std::vector<std::string> recorded;
      for (const auto& a : args)
        if (a != "--quiet" && a != "-q" && a != "--verbose" && a != "-v") recorded.push_back(a);
      RunContext ctx(name, recorded);
      ctx.capture_config(*c.app);
      c.run(ctx);
      ctx.finish();
      return 0;
    }
    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return 1;
  }
}

}  // namespace netdiff::cli

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("netdiff"));
  spdlog::set_pattern("[%l] %v");
  std::vector<std::string> args(argv + 1, argv + argc);
  return netdiff::cli::run_cli(args);
}
