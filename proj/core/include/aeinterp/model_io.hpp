#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aeinterp/classical.hpp"
#include "aeinterp/mlp.hpp"
#include "aeinterp/series.hpp"

namespace aeinterp {

inline constexpr int kModelFormatVersion = 1;

struct Provenance {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<double> final_loss;
  /// First, second and last training time in model input coordinates; lets
  /// `predict` rebuild the dense grid without the training data.
  std::optional<std::array<double, 3>> grid_anchor;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

using AnyModel = std::variant<MlpModel, LinearModel, PolynomialModel, SplineModel>;

struct ModelBundle {
  AnyModel model;
  /// Maps raw (time, value) to the model's coordinates; absent when the model
  /// was fit in raw units.
  std::optional<NormalizationParams> normalization;
  Provenance provenance;

  friend bool operator==(const ModelBundle&, const ModelBundle&) = default;
};

std::string_view model_kind(const AnyModel& model);
std::size_t model_parameter_count(const AnyModel& model);

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip
/// doubles. The same bundle always produces the same bytes.
std::string save_model(const ModelBundle& bundle);
void save_model_file(const ModelBundle& bundle, const std::filesystem::path& path);

/// Throws Corrupt (unparseable or malformed), UnknownVersion, or
/// CountMismatch (parameter array disagrees with the architecture).
ModelBundle load_model(std::string_view text);
ModelBundle load_model_file(const std::filesystem::path& path);

/// Evaluates the model in its own coordinates.
std::vector<double> evaluate_model(const AnyModel& model,
                                   std::span<const double> times);

/// Evaluates the bundle at raw times: normalize, evaluate, denormalize.
std::vector<double> evaluate_bundle(const ModelBundle& bundle,
                                    std::span<const double> raw_times);

}  // namespace aeinterp
