#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aeinterp {

/// Ordered (time, value) samples. Construction validates: equal nonzero
/// lengths, finite entries and strictly increasing times. Immutable after
/// construction.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> times, std::vector<double> values,
             std::string time_unit = "s", std::string value_unit = "");

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }
  const std::string& time_unit() const noexcept { return time_unit_; }
  const std::string& value_unit() const noexcept { return value_unit_; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::string time_unit_;
  std::string value_unit_;
};

/// Throws Error{LengthMismatch | Empty | NonFinite | NonIncreasingTime}.
TimeSeries validate_series(std::vector<double> times,
                           std::vector<double> values);

/// Min-max constants for both axes. Requires t_end > t_start and
/// v_max > v_min (DegenerateSpan otherwise).
struct NormalizationParams {
  double t_start;
  double t_end;
  double v_min;
  double v_max;

  NormalizationParams(double t_start, double t_end, double v_min,
                      double v_max);

  double time_span() const noexcept { return t_end - t_start; }
  double value_span() const noexcept { return v_max - v_min; }

  friend bool operator==(const NormalizationParams&,
                         const NormalizationParams&) = default;
};

/// Rescales both axes to [0, 1]: the first time maps to 0 and the last to
/// 1; the smallest value maps to 0 and the largest to 1. Units become
/// "normalized".
std::pair<TimeSeries, NormalizationParams> normalize(const TimeSeries& series);

/// Applies previously computed params to another series (e.g. a clean
/// reference on the same axes). Outputs may fall outside [0, 1].
TimeSeries normalize_with(const TimeSeries& series,
                          const NormalizationParams& params);

std::vector<double> normalize_times(std::span<const double> times,
                                    const NormalizationParams& params);
std::vector<double> normalize_values(std::span<const double> values,
                                     const NormalizationParams& params);
std::vector<double> denormalize_times(std::span<const double> times,
                                      const NormalizationParams& params);
std::vector<double> denormalize_values(std::span<const double> values,
                                       const NormalizationParams& params);

/// `n_points` uniformly spaced values from t0 - (t1 - t0) to t_last, both
/// inclusive. The first point lies one sample step before the data.
std::vector<double> make_dense_grid(std::span<const double> times,
                                    std::size_t n_points);

struct DerivativeSeries {
  std::vector<double> times;  // source times[1..]
  std::vector<double> rates;  // (v[i+1] - v[i]) / (t[i+1] - t[i])
};

/// Backward difference quotients; the first sample has no rate.
DerivativeSeries finite_diff_derivative(const TimeSeries& series);
DerivativeSeries finite_diff_derivative(std::span<const double> times,
                                        std::span<const double> values);

double rmse(std::span<const double> a, std::span<const double> b);

/// Sample standard deviation (n - 1 denominator). Needs at least 2 values.
double sample_stddev(std::span<const double> values);

}  // namespace aeinterp
