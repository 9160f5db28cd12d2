#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aeinterp/series.hpp"

namespace aeinterp {

// Classical fitting baselines. All fits operate in the coordinates of the
// series they are given; callers that want normalized fitting normalize
// first (see compare.hpp).

/// Least-squares line y = beta0 + beta1 * x.
struct LinearModel {
  double beta0 = 0.0;
  double beta1 = 0.0;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

LinearModel fit_linear(const TimeSeries& series);
double eval_linear(const LinearModel& model, double x);

/// Interpolating polynomial, coefficients in ascending degree.
struct PolynomialModel {
  std::vector<double> coefficients;

  friend bool operator==(const PolynomialModel&,
                         const PolynomialModel&) = default;
};

inline constexpr std::size_t kMaxPolynomialPoints = 30;
inline constexpr double kPivotTolerance = 1e-12;

/// Solves the k x k Vandermonde system V a = y by Gaussian elimination with
/// partial pivoting. Throws TooManyPoints for k > kMaxPolynomialPoints and
/// SingularSystem when a scaled pivot falls below kPivotTolerance.
PolynomialModel fit_polynomial(const TimeSeries& series);
double eval_polynomial(const PolynomialModel& model, double x);

/// Dense linear solve used by fit_polynomial. `matrix` is row-major n x n;
/// both arguments are consumed.
std::vector<double> solve_partial_pivot(std::vector<double> matrix,
                                        std::vector<double> rhs,
                                        double pivot_tolerance);

/// One cubic piece: a + b s + c s^2 + d s^3 with s = x - knot.
struct SplineSegment {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  friend bool operator==(const SplineSegment&, const SplineSegment&) = default;
};

/// Natural cubic spline: C2, zero second derivative at both end knots.
struct SplineModel {
  std::vector<double> knot_times;
  std::vector<double> knot_values;
  std::vector<SplineSegment> segments;  // knot_times.size() - 1 entries

  friend bool operator==(const SplineModel&, const SplineModel&) = default;
};

/// Needs at least 3 samples (TooFewPoints).
SplineModel fit_spline(const TimeSeries& series);

/// OutOfRange outside [first knot, last knot]; no extrapolation.
double eval_spline(const SplineModel& model, double x);

/// Index of the segment that contains x (the last segment owns the final
/// knot). Precondition: x within the knot range.
std::size_t spline_segment_index(const SplineModel& model, double x);

}  // namespace aeinterp
