#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace aeinterp::cli {

/// Record of one CLI run. `resolved_args` is the full argument list with
/// every default made explicit; replaying it reproduces the outputs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> resolved_args;
  std::map<std::string, std::string> config;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string started_at;
  std::string finished_at;
};

std::string utc_timestamp();

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// Throws Error{Corrupt} when fields are missing or any config value is
/// empty (manifests must be fully resolved).
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace aeinterp::cli
