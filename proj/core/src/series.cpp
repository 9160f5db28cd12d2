#include "aeinterp/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aeinterp/error.hpp"

namespace aeinterp {

namespace {

void check_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw Error(ErrorCode::kNonFinite,
                  std::string("non-finite ") + what + " at index " +
                      std::to_string(i),
                  i);
    }
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values,
                       std::string time_unit, std::string value_unit)
    : times_(std::move(times)),
      values_(std::move(values)),
      time_unit_(std::move(time_unit)),
      value_unit_(std::move(value_unit)) {
  if (times_.size() != values_.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "times has " + std::to_string(times_.size()) +
                    " entries but values has " +
                    std::to_string(values_.size()));
  }
  if (times_.empty()) {
    throw Error(ErrorCode::kEmpty, "time series is empty");
  }
  check_finite(times_, "time");
  check_finite(values_, "value");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw Error(ErrorCode::kNonIncreasingTime,
                  "time not strictly increasing at index " + std::to_string(i),
                  i);
    }
  }
}

TimeSeries validate_series(std::vector<double> times,
                           std::vector<double> values) {
  return TimeSeries(std::move(times), std::move(values));
}

NormalizationParams::NormalizationParams(double t_start, double t_end,
                                         double v_min, double v_max)
    : t_start(t_start), t_end(t_end), v_min(v_min), v_max(v_max) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) ||
      !std::isfinite(v_min) || !std::isfinite(v_max)) {
    throw Error(ErrorCode::kNonFinite, "normalization constants must be finite");
  }
  if (!(t_end > t_start)) {
    throw Error(ErrorCode::kDegenerateSpan, "time span is empty");
  }
  if (!(v_max > v_min)) {
    throw Error(ErrorCode::kDegenerateSpan,
                "value span is empty (all values equal)");
  }
}

std::vector<double> normalize_times(std::span<const double> times,
                                    const NormalizationParams& params) {
  std::vector<double> out(times.size());
  const double span = params.time_span();
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = (times[i] - params.t_start) / span;
  }
  return out;
}

std::vector<double> normalize_values(std::span<const double> values,
                                     const NormalizationParams& params) {
  std::vector<double> out(values.size());
  const double span = params.value_span();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = (values[i] - params.v_min) / span;
  }
  return out;
}

std::vector<double> denormalize_times(std::span<const double> times,
                                      const NormalizationParams& params) {
  std::vector<double> out(times.size());
  const double span = params.time_span();
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = times[i] * span + params.t_start;
  }
  return out;
}

std::vector<double> denormalize_values(std::span<const double> values,
                                       const NormalizationParams& params) {
  std::vector<double> out(values.size());
  const double span = params.value_span();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] * span + params.v_min;
  }
  return out;
}

TimeSeries normalize_with(const TimeSeries& series,
                          const NormalizationParams& params) {
  return TimeSeries(normalize_times(series.times(), params),
                    normalize_values(series.values(), params), "normalized",
                    "normalized");
}

std::pair<TimeSeries, NormalizationParams> normalize(const TimeSeries& series) {
  const auto times = series.times();
  const auto values = series.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (times.size() < 2) {
    throw Error(ErrorCode::kDegenerateSpan,
                "cannot normalize a single-sample series");
  }
  NormalizationParams params(times.front(), times.back(), *lo, *hi);
  return {normalize_with(series, params), params};
}

std::vector<double> make_dense_grid(std::span<const double> times,
                                    std::size_t n_points) {
  if (times.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints,
                "dense grid needs at least two sample times");
  }
  if (n_points < 2) {
    throw Error(ErrorCode::kTooFewPoints, "dense grid needs n_points >= 2");
  }
  const double start = times[0] - (times[1] - times[0]);
  const double stop = times.back();
  const double step = (stop - start) / static_cast<double>(n_points - 1);
  std::vector<double> grid(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid[i] = start + static_cast<double>(i) * step;
  }
  grid.back() = stop;
  return grid;
}

DerivativeSeries finite_diff_derivative(std::span<const double> times,
                                        std::span<const double> values) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "times and values differ in length");
  }
  if (times.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints,
                "derivative needs at least two samples");
  }
  DerivativeSeries out;
  out.times.reserve(times.size() - 1);
  out.rates.reserve(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    out.times.push_back(times[i]);
    out.rates.push_back((values[i] - values[i - 1]) / (times[i] - times[i - 1]));
  }
  return out;
}

DerivativeSeries finite_diff_derivative(const TimeSeries& series) {
  return finite_diff_derivative(series.times(), series.values());
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "rmse operands differ in length");
  }
  if (a.empty()) {
    throw Error(ErrorCode::kEmpty, "rmse of empty sequences");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints, "stddev needs at least two values");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace aeinterp
