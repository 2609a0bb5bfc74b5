#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netdiff/error.hpp"
#include "netdiff/io.hpp"

namespace netdiff::io {

std::string_view tool_version() { return NETDIFF_VERSION; }

std::string ResultMetadata::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "netdiff";
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  j["seed"] = seed;
  j["seed_generated"] = seed_generated;
  j["duration_seconds"] = duration_seconds;
  j["inputs"] = input_digests;
  j["outputs"] = output_digests;
  return j.dump(2) + "\n";
}

ResultMetadata ResultMetadata::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ResultMetadata m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.seed_generated = j.value("seed_generated", false);
    m.duration_seconds = j.value("duration_seconds", 0.0);
    m.input_digests = j.value("inputs", std::map<std::string, std::string>{});
    m.output_digests = j.value("outputs", std::map<std::string, std::string>{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid metadata: ") + e.what());
  }
}

fs::path metadata_path(const fs::path& output) {
  fs::path p = output;
  p += ".meta.json";
  return p;
}

void write_metadata(const fs::path& output, const ResultMetadata& meta) {
  const std::string text = meta.to_json();
  atomic_write(metadata_path(output), [&](std::ostream& out) { out << text; });
}

ResultMetadata read_metadata(const fs::path& meta_file) {
  std::ifstream in(meta_file);
  if (!in) throw Error("cannot open '" + meta_file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ResultMetadata::from_json(ss.str());
}

}  // namespace netdiff::io
