#include "aeinterp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aeinterp/error.hpp"

namespace aeinterp {

LinearModel fit_linear(const TimeSeries& series) {
  const auto x = series.times();
  const auto y = series.values();
  const std::size_t n = x.size();
  if (n < 2) {
    throw Error(ErrorCode::kTooFewPoints, "linear fit needs at least 2 points");
  }
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += x[i];
    y_mean += y[i];
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - x_mean;
    sxx += dx * dx;
    sxy += dx * (y[i] - y_mean);
  }
  LinearModel model;
  model.beta1 = sxy / sxx;
  model.beta0 = y_mean - model.beta1 * x_mean;
  return model;
}

double eval_linear(const LinearModel& model, double x) {
  return model.beta0 + model.beta1 * x;
}

std::vector<double> solve_partial_pivot(std::vector<double> matrix,
                                        std::vector<double> rhs,
                                        double pivot_tolerance) {
  const std::size_t n = rhs.size();
  if (matrix.size() != n * n) {
    throw Error(ErrorCode::kShapeMismatch, "matrix is not n x n");
  }
  double scale = 0.0;
  for (double v : matrix) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) {
    throw Error(ErrorCode::kSingularSystem, "zero matrix");
  }
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return matrix[r * n + c];
  };

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (std::abs(at(pivot, col)) < pivot_tolerance * scale) {
      throw Error(ErrorCode::kSingularSystem,
                  "pivot below tolerance in column " + std::to_string(col),
                  col);
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(col, c), at(pivot, c));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = at(r, col) / at(col, col);
      if (factor == 0.0) continue;
      at(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) at(r, c) -= factor * at(col, c);
      rhs[r] -= factor * rhs[col];
    }
  }

  std::vector<double> solution(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= at(i, c) * solution[c];
    solution[i] = acc / at(i, i);
  }
  return solution;
}

PolynomialModel fit_polynomial(const TimeSeries& series) {
  const auto x = series.times();
  const auto y = series.values();
  const std::size_t k = x.size();
  if (k > kMaxPolynomialPoints) {
    throw Error(ErrorCode::kTooManyPoints,
                "polynomial interpolation capped at " +
                    std::to_string(kMaxPolynomialPoints) + " points, got " +
                    std::to_string(k),
                k);
  }
  std::vector<double> vandermonde(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    double power = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      vandermonde[r * k + c] = power;
      power *= x[r];
    }
  }
  auto coefficients = solve_partial_pivot(
      std::move(vandermonde), std::vector<double>(y.begin(), y.end()),
      kPivotTolerance);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (!std::isfinite(coefficients[i])) {
      throw Error(ErrorCode::kSingularSystem,
                  "non-finite polynomial coefficient", i);
    }
  }
  return PolynomialModel{std::move(coefficients)};
}

double eval_polynomial(const PolynomialModel& model, double x) {
  double acc = 0.0;
  for (auto it = model.coefficients.rbegin(); it != model.coefficients.rend();
       ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

SplineModel fit_spline(const TimeSeries& series) {
  const auto t = series.times();
  const auto v = series.values();
  const std::size_t n = t.size();
  if (n < 3) {
    throw Error(ErrorCode::kTooFewPoints, "cubic spline needs at least 3 points");
  }

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t[i + 1] - t[i];

  // Interior second derivatives M[1..n-2] from the symmetric tridiagonal
  // system h[i-1] M[i-1] + 2 (h[i-1] + h[i]) M[i] + h[i] M[i+1] = rhs[i],
  // with M[0] = M[n-1] = 0. Thomas algorithm.
  const std::size_t m = n - 2;
  std::vector<double> diag(m);
  std::vector<double> upper(m);
  std::vector<double> rhs(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = j + 1;
    diag[j] = 2.0 * (h[i - 1] + h[i]);
    upper[j] = h[i];
    rhs[j] = 6.0 * ((v[i + 1] - v[i]) / h[i] - (v[i] - v[i - 1]) / h[i - 1]);
  }
  for (std::size_t j = 1; j < m; ++j) {
    const double lower = h[j];  // sub-diagonal entry of row j is h[i-1] = h[j]
    const double w = lower / diag[j - 1];
    diag[j] -= w * upper[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  std::vector<double> second(n, 0.0);
  for (std::size_t j = m; j-- > 0;) {
    const double next = (j + 1 < m) ? second[j + 2] : 0.0;
    second[j + 1] = (rhs[j] - upper[j] * next) / diag[j];
  }

  SplineModel model;
  model.knot_times.assign(t.begin(), t.end());
  model.knot_values.assign(v.begin(), v.end());
  model.segments.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto& s = model.segments[i];
    s.a = v[i];
    s.b = (v[i + 1] - v[i]) / h[i] - h[i] * (2.0 * second[i] + second[i + 1]) / 6.0;
    s.c = second[i] / 2.0;
    s.d = (second[i + 1] - second[i]) / (6.0 * h[i]);
  }
  return model;
}

std::size_t spline_segment_index(const SplineModel& model, double x) {
  const auto& t = model.knot_times;
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(t.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, model.segments.size() - 1);
}

double eval_spline(const SplineModel& model, double x) {
  const auto& t = model.knot_times;
  if (t.empty() || model.segments.size() + 1 != t.size()) {
    throw Error(ErrorCode::kShapeMismatch, "malformed spline model");
  }
  if (!(x >= t.front() && x <= t.back())) {
    throw Error(ErrorCode::kOutOfRange,
                "spline evaluated outside [" + std::to_string(t.front()) +
                    ", " + std::to_string(t.back()) + "]");
  }
  if (x == t.back()) return model.knot_values.back();
  const std::size_t i = spline_segment_index(model, x);
  const auto& s = model.segments[i];
  const double dx = x - t[i];
  return s.a + dx * (s.b + dx * (s.c + dx * s.d));
}

}  // namespace aeinterp
