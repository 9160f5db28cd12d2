#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "aeinterp/series.hpp"

namespace aeinterp {

enum class SignalKind { kSumOfSines, kRampPlusSine, kPiecewiseSmooth };

std::string_view to_string(SignalKind kind);
SignalKind signal_kind_from_string(std::string_view name);

/// Shape parameters shared by the signal families:
///   sum-of-sines:     offset + amp1 sin(2 pi freq1 t) + amp2 sin(2 pi freq2 t)
///   ramp-plus-sine:   offset + slope (t - t_start) + amp1 sin(2 pi freq1 t)
///   piecewise-smooth: offset + amp1 sin(2 pi freq1 t) + slope max(0, t - t_mid)
/// where t_mid is the midpoint of the time span.
struct SignalParams {
  double offset = 0.5;
  double amp1 = 0.3;
  double freq1 = 1.0;
  double amp2 = 0.1;
  double freq2 = 3.0;
  double slope = 0.5;

  friend bool operator==(const SignalParams&, const SignalParams&) = default;
};

struct SyntheticSpec {
  SignalKind kind = SignalKind::kSumOfSines;
  SignalParams params;
  std::size_t n_samples = 400;
  double t_start = 0.0;
  double t_end = 1.0;
  double sigma = 0.05;
  std::uint64_t seed = 42;

  /// InvalidSpec unless n_samples >= 4, t_end > t_start, sigma >= 0 and all
  /// reals finite.
  void validate() const;

  friend bool operator==(const SyntheticSpec&, const SyntheticSpec&) = default;
};

/// 0.5 + 0.3 sin(2 pi t) + 0.1 sin(6 pi t) on [0, 1], n = 400, sigma = 0.05,
/// seed 42.
SyntheticSpec default_benchmark_spec();

double clean_value(const SyntheticSpec& spec, double t);
/// Closed-form time derivative of clean_value (right derivative at a kink).
double clean_derivative(const SyntheticSpec& spec, double t);

struct SyntheticData {
  TimeSeries noisy;
  TimeSeries clean;
};

/// Uniform times t_start + i (t_end - t_start) / (n - 1); noisy values add
/// sigma * Rng(seed).normal() to each clean value in time order.
SyntheticData generate(const SyntheticSpec& spec);

/// Key-value config: one `key = value` per line, '#' starts a comment.
/// Keys: function, offset, amp1, freq1, amp2, freq2, slope, n_samples,
/// t_start, t_end, sigma, seed. Missing keys keep the default benchmark
/// values. Unknown keys and bad values raise InvalidSpec.
SyntheticSpec parse_synthetic_config(std::istream& in);
SyntheticSpec load_synthetic_config(const std::filesystem::path& path);
std::string format_synthetic_config(const SyntheticSpec& spec);

}  // namespace aeinterp
