#include "cli/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>

#include "aeinterp/error.hpp"

namespace aeinterp::cli {

using nlohmann::json;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  json doc{{"subcommand", m.subcommand},
           {"resolved_args", m.resolved_args},
           {"config", m.config},
           {"inputs", m.inputs},
           {"outputs", m.outputs},
           {"started_at", m.started_at},
           {"finished_at", m.finished_at}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    const json doc = json::parse(in);
    RunManifest m;
    m.subcommand = doc.at("subcommand").get<std::string>();
    m.resolved_args = doc.at("resolved_args").get<std::vector<std::string>>();
    m.config = doc.at("config").get<std::map<std::string, std::string>>();
    m.inputs = doc.at("inputs").get<std::vector<std::string>>();
    m.outputs = doc.at("outputs").get<std::vector<std::string>>();
    m.started_at = doc.at("started_at").get<std::string>();
    m.finished_at = doc.at("finished_at").get<std::string>();
    if (m.resolved_args.empty() || m.resolved_args.front() != m.subcommand) {
      throw Error(ErrorCode::kCorrupt, "manifest args do not start with subcommand");
    }
    for (const auto& [key, value] : m.config) {
      if (value.empty()) {
        throw Error(ErrorCode::kCorrupt, "manifest config '" + key + "' is unset");
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorrupt, std::string("corrupt manifest: ") + e.what());
  }
}

}  // namespace aeinterp::cli
