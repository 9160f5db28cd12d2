#include "aeinterp/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <vector>

#include "aeinterp/csv.hpp"
#include "aeinterp/error.hpp"
#include "aeinterp/random.hpp"

namespace aeinterp {

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::kSumOfSines: return "sum-of-sines";
    case SignalKind::kRampPlusSine: return "ramp-plus-sine";
    case SignalKind::kPiecewiseSmooth: return "piecewise-smooth";
  }
  return "sum-of-sines";
}

SignalKind signal_kind_from_string(std::string_view name) {
  if (name == "sum-of-sines") return SignalKind::kSumOfSines;
  if (name == "ramp-plus-sine") return SignalKind::kRampPlusSine;
  if (name == "piecewise-smooth") return SignalKind::kPiecewiseSmooth;
  throw Error(ErrorCode::kInvalidSpec,
              "unknown signal function '" + std::string(name) + "'");
}

void SyntheticSpec::validate() const {
  const auto& p = params;
  for (double x : {p.offset, p.amp1, p.freq1, p.amp2, p.freq2, p.slope, t_start,
                   t_end, sigma}) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidSpec, "synthetic spec has a non-finite field");
    }
  }
  if (n_samples < 4) {
    throw Error(ErrorCode::kInvalidSpec, "n_samples must be >= 4");
  }
  if (!(t_end > t_start)) {
    throw Error(ErrorCode::kInvalidSpec, "time span must be nonzero");
  }
  if (sigma < 0.0) {
    throw Error(ErrorCode::kInvalidSpec, "sigma must be >= 0");
  }
}

SyntheticSpec default_benchmark_spec() { return SyntheticSpec{}; }

double clean_value(const SyntheticSpec& spec, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto& p = spec.params;
  switch (spec.kind) {
    case SignalKind::kSumOfSines:
      return p.offset + p.amp1 * std::sin(two_pi * p.freq1 * t) +
             p.amp2 * std::sin(two_pi * p.freq2 * t);
    case SignalKind::kRampPlusSine:
      return p.offset + p.slope * (t - spec.t_start) +
             p.amp1 * std::sin(two_pi * p.freq1 * t);
    case SignalKind::kPiecewiseSmooth: {
      const double mid = 0.5 * (spec.t_start + spec.t_end);
      return p.offset + p.amp1 * std::sin(two_pi * p.freq1 * t) +
             p.slope * std::max(0.0, t - mid);
    }
  }
  return 0.0;
}

double clean_derivative(const SyntheticSpec& spec, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto& p = spec.params;
  const double wave1 = p.amp1 * two_pi * p.freq1 * std::cos(two_pi * p.freq1 * t);
  switch (spec.kind) {
    case SignalKind::kSumOfSines:
      return wave1 + p.amp2 * two_pi * p.freq2 * std::cos(two_pi * p.freq2 * t);
    case SignalKind::kRampPlusSine:
      return p.slope + wave1;
    case SignalKind::kPiecewiseSmooth: {
      const double mid = 0.5 * (spec.t_start + spec.t_end);
      return wave1 + (t >= mid ? p.slope : 0.0);
    }
  }
  return 0.0;
}

SyntheticData generate(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_samples;
  std::vector<double> times(n);
  const double step = (spec.t_end - spec.t_start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = spec.t_start + static_cast<double>(i) * step;
  }
  times.back() = spec.t_end;

  std::vector<double> clean(n);
  std::vector<double> noisy(n);
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    clean[i] = clean_value(spec, times[i]);
    noisy[i] = spec.sigma == 0.0 ? clean[i] : clean[i] + spec.sigma * rng.normal();
  }
  return SyntheticData{TimeSeries(times, std::move(noisy), "s", "synthetic"),
                       TimeSeries(times, std::move(clean), "s", "synthetic")};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidSpec,
                "bad value '" + std::string(text) + "' for key '" +
                    std::string(key) + "'");
  }
  return value;
}

}  // namespace

SyntheticSpec parse_synthetic_config(std::istream& in) {
  SyntheticSpec spec = default_benchmark_spec();
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row = raw;
    if (const auto hash = row.find('#'); hash != std::string_view::npos) {
      row = row.substr(0, hash);
    }
    row = trim(row);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidSpec,
                  "line " + std::to_string(line) + ": expected key = value", line);
    }
    const auto key = trim(row.substr(0, eq));
    const auto value = trim(row.substr(eq + 1));
    auto& p = spec.params;
    if (key == "function") spec.kind = signal_kind_from_string(value);
    else if (key == "offset") p.offset = parse_number<double>(key, value);
    else if (key == "amp1") p.amp1 = parse_number<double>(key, value);
    else if (key == "freq1") p.freq1 = parse_number<double>(key, value);
    else if (key == "amp2") p.amp2 = parse_number<double>(key, value);
    else if (key == "freq2") p.freq2 = parse_number<double>(key, value);
    else if (key == "slope") p.slope = parse_number<double>(key, value);
    else if (key == "n_samples") spec.n_samples = parse_number<std::size_t>(key, value);
    else if (key == "t_start") spec.t_start = parse_number<double>(key, value);
    else if (key == "t_end") spec.t_end = parse_number<double>(key, value);
    else if (key == "sigma") spec.sigma = parse_number<double>(key, value);
    else if (key == "seed") spec.seed = parse_number<std::uint64_t>(key, value);
    else {
      throw Error(ErrorCode::kInvalidSpec,
                  "line " + std::to_string(line) + ": unknown key '" +
                      std::string(key) + "'",
                  line);
    }
  }
  spec.validate();
  return spec;
}

SyntheticSpec load_synthetic_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_synthetic_config(in);
}

std::string format_synthetic_config(const SyntheticSpec& spec) {
  std::ostringstream out;
  const auto& p = spec.params;
  out << "function = " << to_string(spec.kind) << '\n'
      << "offset = " << format_double(p.offset) << '\n'
      << "amp1 = " << format_double(p.amp1) << '\n'
      << "freq1 = " << format_double(p.freq1) << '\n'
      << "amp2 = " << format_double(p.amp2) << '\n'
      << "freq2 = " << format_double(p.freq2) << '\n'
      << "slope = " << format_double(p.slope) << '\n'
      << "n_samples = " << spec.n_samples << '\n'
      << "t_start = " << format_double(spec.t_start) << '\n'
      << "t_end = " << format_double(spec.t_end) << '\n'
      << "sigma = " << format_double(spec.sigma) << '\n'
      << "seed = " << spec.seed << '\n';
  return out.str();
}

}  // namespace aeinterp
