#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aeinterp/classical.hpp"
#include "aeinterp/error.hpp"
#include "oracles.hpp"

namespace aeinterp {
namespace {

const std::vector<double> kFiveX{1, 3, 5, 7, 9};
const std::vector<double> kFiveY{230.02, 321.01, 305.00, 245.75, 345.62};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected aeinterp::Error";
  return ErrorCode::kIo;
}

TEST(LinearFit, ExactLine) {
  const auto m = fit_linear(TimeSeries({0, 1, 2}, {1, 3, 5}));
  EXPECT_DOUBLE_EQ(m.beta0, 1.0);
  EXPECT_DOUBLE_EQ(m.beta1, 2.0);
  EXPECT_EQ(eval_linear(LinearModel{1, 2}, 0), 1.0);
  EXPECT_EQ(eval_linear(LinearModel{1, 2}, 3), 7.0);
}

TEST(LinearFit, ConstantData) {
  const auto m = fit_linear(TimeSeries({0, 1, 5, 6}, {4.5, 4.5, 4.5, 4.5}));
  EXPECT_DOUBLE_EQ(m.beta0, 4.5);
  EXPECT_EQ(m.beta1, 0.0);
}

TEST(LinearFit, FivePointDatasetMatchesNormalEquations) {
  const auto m = fit_linear(TimeSeries(kFiveX, kFiveY));
  const auto [b0, b1] = oracle::normal_equations_line(kFiveX, kFiveY);
  EXPECT_NEAR(m.beta0, static_cast<double>(b0), 1e-10 * std::abs(static_cast<double>(b0)));
  EXPECT_NEAR(m.beta1, static_cast<double>(b1), 1e-10 * std::abs(static_cast<double>(b1)));
  const double at4 = static_cast<double>(b0 + 4 * b1);
  EXPECT_NEAR(eval_linear(m, 4.0), at4, 1e-10 * std::abs(at4));
}

TEST(LinearFit, RandomInstancesMatchOracle) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 999;
    auto x = oracle::random_vector(rng, n, -10, 10);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    const auto c = oracle::random_vector(rng, 2, 0.5, 5);
    const auto noise = oracle::random_vector(rng, x.size(), -1, 1);
    std::vector<double> y;
    for (std::size_t i = 0; i < x.size(); ++i) y.push_back(c[0] + c[1] * x[i] + noise[i]);
    if (x.size() < 2) continue;
    const auto m = fit_linear(TimeSeries(x, y));
    const auto [b0, b1] = oracle::normal_equations_line(x, y);
    EXPECT_LE(oracle::relative_error(m.beta0, static_cast<double>(b0)), 1e-10);
    EXPECT_LE(oracle::relative_error(m.beta1, static_cast<double>(b1)), 1e-10);
  }
}

TEST(LinearFit, NeedsTwoPoints) {
  EXPECT_EQ(code_of([] { fit_linear(TimeSeries({1}, {1})); }), ErrorCode::kTooFewPoints);
}

TEST(PolynomialFit, ConstantAndParabola) {
  const auto c = fit_polynomial(TimeSeries({0, 1}, {5, 5}));
  ASSERT_EQ(c.coefficients.size(), 2u);
  EXPECT_DOUBLE_EQ(c.coefficients[0], 5.0);
  EXPECT_NEAR(c.coefficients[1], 0.0, 1e-15);
  const auto p = fit_polynomial(TimeSeries({0, 1, 2}, {0, 1, 4}));
  ASSERT_EQ(p.coefficients.size(), 3u);
  EXPECT_NEAR(p.coefficients[0], 0.0, 1e-15);
  EXPECT_NEAR(p.coefficients[1], 0.0, 1e-15);
  EXPECT_NEAR(p.coefficients[2], 1.0, 1e-15);
  EXPECT_EQ(eval_polynomial(PolynomialModel{{5, 0}}, 123.0), 5.0);
  EXPECT_EQ(eval_polynomial(PolynomialModel{{0, 0, 1}}, 3.0), 9.0);
}

TEST(PolynomialFit, QueryAtFourMatchesLagrange) {
  const auto p = fit_polynomial(TimeSeries(kFiveX, kFiveY));
  ASSERT_EQ(p.coefficients.size(), 5u);
  for (std::size_t i = 0; i < kFiveX.size(); ++i) {
    EXPECT_LT(std::abs(eval_polynomial(p, kFiveX[i]) - kFiveY[i]), 1e-8);
  }
  const double expected = static_cast<double>(oracle::lagrange_eval(kFiveX, kFiveY, 4.0));
  EXPECT_NEAR(eval_polynomial(p, 4.0), expected, 1e-8);
}

TEST(PolynomialFit, NormalizedInputsReproduceNodesProperty) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 10;
    std::vector<double> x(k);
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = k == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(k - 1);
    }
    const auto y = oracle::random_vector(rng, k, 0, 1);
    const auto p = fit_polynomial(TimeSeries(x, y));
    for (std::size_t i = 0; i < k; ++i) {
      ASSERT_LE(std::abs(eval_polynomial(p, x[i]) - y[i]), 1e-8) << "k=" << k;
    }
  }
}

TEST(PolynomialFit, CapAndSingularity) {
  std::vector<double> x(31), y(31, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  EXPECT_EQ(code_of([&] { fit_polynomial(TimeSeries(x, y)); }), ErrorCode::kTooManyPoints);
  // Nearly coincident nodes make the Vandermonde rows dependent.
  EXPECT_EQ(code_of([] {
              fit_polynomial(TimeSeries({0.0, 1.0, 1.0 + 1e-14, 2.0}, {0, 1, 1, 2}));
            }),
            ErrorCode::kSingularSystem);
}

TEST(PolynomialEval, HornerMatchesPowerSum) {
  std::mt19937_64 rng(8);
  const auto a = oracle::random_vector(rng, 7, -3, 3);
  const auto xs = oracle::random_vector(rng, 20, -2, 2);
  for (double x : xs) {
    const double expected = static_cast<double>(oracle::power_sum(a, x));
    EXPECT_LE(oracle::relative_error(eval_polynomial(PolynomialModel{a}, x), expected), 1e-12);
  }
}

TEST(SolvePartialPivot, NeedsPivoting) {
  // Zero leading entry: naive elimination divides by zero.
  const auto x = solve_partial_pivot({0, 1, 1, 1}, {2, 3}, 1e-12);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Spline, ReproducesAffineData) {
  const auto s = fit_spline(TimeSeries({0, 1, 2}, {0, 2, 4}));
  EXPECT_NEAR(eval_spline(s, 0.5), 1.0, 1e-15);
  for (double x = 0; x <= 2.0; x += 0.125) EXPECT_NEAR(eval_spline(s, x), 2 * x, 1e-14);
}

TEST(Spline, AffineReproductionProperty) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = oracle::random_vector(rng, 2, -10, 10);
    const std::size_t n = 3 + rng() % 40;
    auto x = oracle::random_vector(rng, n, 0, 1);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (x.size() < 3) continue;
    std::vector<double> y;
    for (double t : x) y.push_back(c[0] + c[1] * t);
    const auto s = fit_spline(TimeSeries(x, y));
    for (double q : oracle::random_vector(rng, 100, x.front(), x.back())) {
      ASSERT_NEAR(eval_spline(s, q), c[0] + c[1] * q, 1e-10);
    }
  }
}

TEST(Spline, KnotsAreReproduced) {
  const std::vector<double> x{0, 0.3, 1.1, 2, 2.5};
  const std::vector<double> y{1, -2, 0.5, 3, 3};
  const auto s = fit_spline(TimeSeries(x, y));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(eval_spline(s, x[i]), y[i]);
}

TEST(Spline, FourPointDatasetMatchesDenseOracle) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{0, 1, 0, 1};
  const auto s = fit_spline(TimeSeries(x, y));
  const oracle::DenseSplineOracle ref(x, y);
  EXPECT_NEAR(eval_spline(s, 1.5), static_cast<double>(ref(1.5)), 1e-10);
  std::mt19937_64 rng(4);
  for (double q : oracle::random_vector(rng, 100, 0, 3)) {
    EXPECT_NEAR(eval_spline(s, q), static_cast<double>(ref(q)), 1e-10);
  }
}

TEST(Spline, NaturalBoundaryAndC2ContinuityProperty) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<double> x(n);
    double t = 0;
    for (auto& xi : x) xi = (t += 0.05 + static_cast<double>(rng() % 100) / 100.0);
    const auto y = oracle::random_vector(rng, n, -1, 1);
    const auto s = fit_spline(TimeSeries(x, y));
    EXPECT_EQ(s.segments.front().c, 0.0);
    const auto& last = s.segments.back();
    const double h_last = x[n - 1] - x[n - 2];
    EXPECT_NEAR(2 * last.c + 6 * last.d * h_last, 0.0, 1e-9);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto& left = s.segments[i - 1];
      const double h = x[i] - x[i - 1];
      const double from_left = 2 * left.c + 6 * left.d * h;
      const double from_right = 2 * s.segments[i].c;
      EXPECT_LE(oracle::relative_error(from_left, from_right), 1e-8);
      const double value_left = left.a + h * (left.b + h * (left.c + h * left.d));
      EXPECT_NEAR(value_left, y[i], 1e-12);
    }
  }
}

TEST(Spline, ErrorsAndRange) {
  EXPECT_EQ(code_of([] { fit_spline(TimeSeries({0, 1}, {0, 1})); }), ErrorCode::kTooFewPoints);
  const auto s = fit_spline(TimeSeries({0, 1, 2}, {0, 1, 0}));
  EXPECT_EQ(code_of([&] { eval_spline(s, -0.001); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { eval_spline(s, 2.001); }), ErrorCode::kOutOfRange);
}

TEST(Classical, FitsAreDeterministic) {
  const TimeSeries s(kFiveX, kFiveY);
  EXPECT_EQ(fit_spline(s), fit_spline(s));
  EXPECT_EQ(fit_polynomial(s), fit_polynomial(s));
  const auto first = fit_linear(s);
  fit_spline(s);
  EXPECT_EQ(fit_linear(s), first);
}

}  // namespace
}  // namespace aeinterp
