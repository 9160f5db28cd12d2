#include "aeinterp/compare.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "aeinterp/classical.hpp"
#include "aeinterp/csv.hpp"
#include "aeinterp/error.hpp"

namespace aeinterp {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kLinear: return "linear";
    case Method::kNeural: return "neural";
    case Method::kPolynomial: return "polynomial";
    case Method::kSpline: return "spline";
  }
  return "linear";
}

Method method_from_string(std::string_view name) {
  if (name == "linear") return Method::kLinear;
  if (name == "neural") return Method::kNeural;
  if (name == "polynomial") return Method::kPolynomial;
  if (name == "spline") return Method::kSpline;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view text) {
  std::vector<Method> methods;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto token = text.substr(pos, comma - pos);
    if (!token.empty()) {
      const Method m = method_from_string(token);
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
        methods.push_back(m);
      }
    }
    pos = comma + 1;
  }
  return methods;
}

std::vector<Method> all_methods() {
  return {Method::kLinear, Method::kNeural, Method::kPolynomial, Method::kSpline};
}

const MethodRow* ComparisonReport::find(Method method) const {
  for (const auto& row : rows) {
    if (row.method == method) return &row;
  }
  return nullptr;
}

namespace {

struct Evaluation {
  std::vector<double> at_samples;
  std::vector<double> grid_times;
  std::vector<double> grid_values;
  std::optional<double> initial_loss;
  std::optional<double> final_loss;
};

template <typename Fn>
std::vector<double> map_values(std::span<const double> xs, Fn&& fn) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(fn(x));
  return out;
}

Evaluation evaluate(Method method, const TimeSeries& fit_series,
                    std::span<const double> grid,
                    const ComparisonOptions& options) {
  const auto samples = fit_series.times();
  Evaluation ev;
  ev.grid_times.assign(grid.begin(), grid.end());
  switch (method) {
    case Method::kLinear: {
      const auto model = fit_linear(fit_series);
      const auto f = [&](double x) { return eval_linear(model, x); };
      ev.at_samples = map_values(samples, f);
      ev.grid_values = map_values(grid, f);
      break;
    }
    case Method::kPolynomial: {
      const auto model = fit_polynomial(fit_series);
      const auto f = [&](double x) { return eval_polynomial(model, x); };
      ev.at_samples = map_values(samples, f);
      ev.grid_values = map_values(grid, f);
      break;
    }
    case Method::kSpline: {
      const auto model = fit_spline(fit_series);
      const auto f = [&](double x) { return eval_spline(model, x); };
      ev.at_samples = map_values(samples, f);
      ev.grid_times.clear();
      for (double x : grid) {
        if (x >= samples.front() && x <= samples.back()) {
          ev.grid_times.push_back(x);
        }
      }
      ev.grid_values = map_values(ev.grid_times, f);
      break;
    }
    case Method::kNeural: {
      auto model = build_mlp(1, options.architecture, options.train.seed);
      auto [trained, report] = train(std::move(model), fit_series, options.train);
      ev.at_samples = predict(trained, samples);
      ev.grid_values = predict(trained, grid);
      ev.initial_loss = report.initial_loss;
      ev.final_loss = report.final_loss;
      break;
    }
  }
  return ev;
}

MethodRow run_method(Method method, const TimeSeries& noisy,
                     const std::optional<TimeSeries>& clean,
                     const ComparisonOptions& options) {
  MethodRow row;
  row.method = method;
  const auto started = std::chrono::steady_clock::now();
  try {
    std::optional<NormalizationParams> params;
    std::optional<TimeSeries> normalized;
    if (options.normalize) {
      auto [series, p] = normalize(noisy);
      normalized.emplace(std::move(series));
      params.emplace(p);
    }
    const TimeSeries& fit_series = normalized ? *normalized : noisy;
    const auto grid = make_dense_grid(fit_series.times(), options.grid_points);

    auto ev = evaluate(method, fit_series, grid, options);
    if (params) {
      ev.at_samples = denormalize_values(ev.at_samples, *params);
      ev.grid_values = denormalize_values(ev.grid_values, *params);
      ev.grid_times = denormalize_times(ev.grid_times, *params);
    }
    for (double v : ev.at_samples) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite, "fit produced non-finite values");
      }
    }
    if (clean) row.rmse_to_clean = rmse(ev.at_samples, clean->values());
    const auto deriv = finite_diff_derivative(ev.grid_times, ev.grid_values);
    row.deriv_std_interpolated = sample_stddev(deriv.rates);
    if (!std::isfinite(*row.deriv_std_interpolated)) {
      throw Error(ErrorCode::kNonFinite, "interpolated derivative is non-finite");
    }
    row.grid_points_used = ev.grid_times.size();
    row.train_initial_loss = ev.initial_loss;
    row.train_final_loss = ev.final_loss;
    row.sample_values = std::move(ev.at_samples);
    row.grid_times = std::move(ev.grid_times);
    row.grid_values = std::move(ev.grid_values);
  } catch (const Error& e) {
    row = MethodRow{};
    row.method = method;
    row.error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    row = MethodRow{};
    row.method = method;
    row.error = e.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return row;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ComparisonReport run_comparison(const TimeSeries& noisy,
                                const std::optional<TimeSeries>& clean,
                                std::span<const Method> methods,
                                const ComparisonOptions& options) {
  if (clean) {
    const auto a = noisy.times();
    const auto b = clean->times();
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
      throw Error(ErrorCode::kLengthMismatch,
                  "noisy and clean series must share sample times");
    }
  }
  ComparisonReport report;
  if (methods.empty()) return report;

  if (clean) report.noisy_rmse = rmse(noisy.values(), clean->values());
  if (noisy.size() >= 3) {
    report.deriv_std_original =
        sample_stddev(finite_diff_derivative(noisy).rates);
  }

  std::vector<std::future<MethodRow>> pending;
  for (const Method m : methods) {
    pending.push_back(std::async(std::launch::async, [&, m] {
      return run_method(m, noisy, clean, options);
    }));
  }
  for (auto& f : pending) report.rows.push_back(f.get());
  std::sort(report.rows.begin(), report.rows.end(),
            [](const MethodRow& a, const MethodRow& b) {
              return to_string(a.method) < to_string(b.method);
            });
  return report;
}

ComparisonReport run_benchmark(const SyntheticSpec& spec,
                               std::span<const Method> methods,
                               const ComparisonOptions& options) {
  const auto data = generate(spec);
  auto report = run_comparison(data.noisy, data.clean, methods, options);
  if (!methods.empty() && options.grid_points >= 3) {
    const auto grid = make_dense_grid(data.clean.times(), options.grid_points);
    std::vector<double> rates;
    rates.reserve(grid.size());
    for (double t : grid) rates.push_back(clean_derivative(spec, t));
    report.deriv_std_clean = sample_stddev(rates);
  }
  return report;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
  out << "method,rmse_to_clean,noisy_rmse,deriv_std_original,"
         "deriv_std_interpolated,grid_points_used,train_initial_loss,"
         "train_final_loss,error\n";
  for (const auto& row : report.rows) {
    out << to_string(row.method) << ',' << optional_cell(row.rmse_to_clean)
        << ',' << optional_cell(report.noisy_rmse) << ','
        << optional_cell(report.deriv_std_original) << ','
        << optional_cell(row.deriv_std_interpolated) << ',';
    if (!row.error) out << row.grid_points_used;
    out << ',' << optional_cell(row.train_initial_loss) << ','
        << optional_cell(row.train_final_loss) << ','
        << (row.error ? csv_escape(*row.error) : std::string()) << '\n';
  }
}

void write_report_text(std::ostream& out, const ComparisonReport& report) {
  const auto cell = [](const std::optional<double>& v) {
    std::ostringstream s;
    if (v) {
      s << std::setprecision(6) << *v;
    } else {
      s << "-";
    }
    return s.str();
  };
  out << "noisy RMSE to clean:          " << cell(report.noisy_rmse) << '\n'
      << "derivative std (original):    " << cell(report.deriv_std_original)
      << '\n'
      << "derivative std (clean, exact): " << cell(report.deriv_std_clean)
      << "\n\n";
  out << std::left << std::setw(12) << "method" << std::setw(16) << "rmse_clean"
      << std::setw(16) << "deriv_std" << std::setw(10) << "grid"
      << std::setw(12) << "seconds" << "status\n";
  for (const auto& row : report.rows) {
    out << std::left << std::setw(12) << to_string(row.method) << std::setw(16)
        << cell(row.rmse_to_clean) << std::setw(16)
        << cell(row.deriv_std_interpolated) << std::setw(10)
        << row.grid_points_used << std::setw(12) << std::setprecision(4)
        << row.wall_seconds << (row.error ? *row.error : std::string("ok"))
        << '\n';
  }
}

}  // namespace aeinterp
