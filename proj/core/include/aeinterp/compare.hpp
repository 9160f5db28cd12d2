#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aeinterp/mlp.hpp"
#include "aeinterp/series.hpp"
#include "aeinterp/synth.hpp"
#include "aeinterp/train.hpp"

namespace aeinterp {

enum class Method { kLinear, kNeural, kPolynomial, kSpline };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);
/// Comma-separated list, e.g. "neural,spline". Duplicates are dropped.
std::vector<Method> parse_methods(std::string_view text);
std::vector<Method> all_methods();

struct ComparisonOptions {
  std::size_t grid_points = 10000;
  TrainConfig train;
  std::vector<LayerSpec> architecture = default_architecture();
  /// Fit every method in min-max normalized coordinates (derived from the
  /// noisy series) and map results back. Off fits raw coordinates.
  bool normalize = true;
};

/// One method's outcome. When `error` is set the metric fields are empty.
struct MethodRow {
  Method method = Method::kLinear;
  std::optional<std::string> error;

  std::optional<double> rmse_to_clean;            // fit at sample times vs clean
  std::optional<double> deriv_std_interpolated;   // finite differences on grid
  std::size_t grid_points_used = 0;
  std::optional<double> train_initial_loss;       // neural only
  std::optional<double> train_final_loss;         // neural only
  double wall_seconds = 0.0;

  std::vector<double> sample_values;  // fit evaluated at sample times
  std::vector<double> grid_times;     // raw units
  std::vector<double> grid_values;    // raw units
};

struct ComparisonReport {
  std::vector<MethodRow> rows;  // sorted by method name
  std::optional<double> noisy_rmse;           // noisy vs clean
  std::optional<double> deriv_std_original;   // finite differences on noisy
  std::optional<double> deriv_std_clean;      // closed form, when known

  const MethodRow* find(Method method) const;
};

/// Fits each method to `noisy`, evaluates it at the sample times and on the
/// dense grid, and collects metrics. `clean` (same times as `noisy`) enables
/// the RMSE columns. Per-method failures land in that row's `error`. Methods
/// that cannot extrapolate (spline) use only grid points inside the data.
ComparisonReport run_comparison(const TimeSeries& noisy,
                                const std::optional<TimeSeries>& clean,
                                std::span<const Method> methods,
                                const ComparisonOptions& options);

/// generate(spec), run_comparison, then the closed-form clean derivative std
/// over the same dense grid.
ComparisonReport run_benchmark(const SyntheticSpec& spec,
                               std::span<const Method> methods,
                               const ComparisonOptions& options);

/// Deterministic CSV: one row per method, no timing columns.
void write_report_csv(std::ostream& out, const ComparisonReport& report);
/// Human-readable table including wall time.
void write_report_text(std::ostream& out, const ComparisonReport& report);

}  // namespace aeinterp
