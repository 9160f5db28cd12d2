#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/manifest.hpp"

namespace aeinterp::cli {

inline constexpr const char* kDefaultArchitecture = "1L,128R,64R,32R,64R,128R,1L";

struct TrainOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir = "out";
  std::size_t epochs = 1000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> batch;  // nullopt = full batch
  double learning_rate = 1e-3;
  std::string architecture = kDefaultArchitecture;
  bool already_normalized = false;
  /// t_start, t_end, v_min, v_max to store with an already-normalized input.
  std::optional<std::array<double, 4>> normalization;
};

struct PredictOptions {
  std::filesystem::path model;
  std::filesystem::path out_dir = "out";
  std::size_t points = 10000;
};

struct DerivativeOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir = "out";
};

struct CompareOptions {
  std::string synthetic = "default";  // "default" or a config file path
  std::optional<std::filesystem::path> input;
  std::string methods = "linear,neural,polynomial,spline";
  std::size_t points = 10000;
  std::size_t epochs = 1000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> batch;
  double learning_rate = 1e-3;
  std::string architecture = kDefaultArchitecture;
  bool raw_coordinates = false;
  std::filesystem::path out_dir = "out";
};

// Each command writes its outputs and manifest.json into out_dir and returns
// the manifest. Errors propagate as aeinterp::Error.
RunManifest cmd_train(const TrainOptions& options, std::ostream& log);
RunManifest cmd_predict(const PredictOptions& options, std::ostream& log);
RunManifest cmd_derivative(const DerivativeOptions& options, std::ostream& log);
RunManifest cmd_compare(const CompareOptions& options, std::ostream& log);

/// Parses `args` (without the program name) and dispatches. Returns 0 on
/// success, 1 on a runtime error and 2 on a usage error; failures print one
/// machine-readable `error: code=<Code> ...` line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aeinterp::cli
