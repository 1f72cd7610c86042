#include <gtest/gtest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

#include "zmexp/regions.hpp"

using zmexp::Complex;
using zmexp::MapParams;

namespace {

constexpr double kPi = std::numbers::pi;

// eps^(m-1) e^eps = 1/|lambda|  <=>  eps = (m-1) W0(|lambda|^(-1/(m-1)) / (m-1)).
double epsilon0_oracle(double abs_lambda, int m) {
  const double n = m - 1.0;
  return n * boost::math::lambert_w0(std::pow(abs_lambda, -1.0 / n) / n);
}

// x0 from the closed condition, located with TOMS 748 on a bracket.
double x0_oracle(double abs_lambda, int m) {
  const double eps = epsilon0_oracle(abs_lambda, m);
  const double level = std::log(eps / abs_lambda);
  if (m * std::log(m / std::numbers::e) <= level)
    return -m;
  auto f = [&](double x) { return m * std::log(-x) + x - level; };
  std::uintmax_t iters = 500;
  const auto r = boost::math::tools::toms748_solve(f, -1e6, static_cast<double>(-m),
                                                   boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

} // namespace

TEST(Epsilon0, AnalyticPoint) {
  EXPECT_NEAR(zmexp::solve_epsilon0(1.0 / std::numbers::e, 2), 1.0, 1e-12);
}

TEST(Epsilon0, OmegaConstant) {
  EXPECT_NEAR(zmexp::solve_epsilon0(1.0, 2), 0.5671432904097838, 1e-12);
}

TEST(Epsilon0, AgreesWithLambertW) {
  for (int m = 2; m <= 8; ++m)
    for (double lam : {1e-3, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1e3}) {
      const double oracle = epsilon0_oracle(lam, m);
      EXPECT_NEAR(zmexp::solve_epsilon0(lam, m), oracle, 1e-12 * std::max(1.0, oracle))
          << "m=" << m << " |lambda|=" << lam;
    }
}

TEST(Epsilon0, FrozenValues) {
  EXPECT_NEAR(zmexp::solve_epsilon0(1.0, 3), 0.7034674224983916, 1e-12);
  EXPECT_NEAR(zmexp::solve_epsilon0(10.0, 2), 0.09127652716086222, 1e-12);
}

TEST(Epsilon0, LowerBoundHolds) {
  for (int m = 2; m <= 8; ++m)
    for (double lam : {1e-3, 0.05, 0.2, 1.0 / std::numbers::e, 1.0, 7.0, 1e3})
      EXPECT_GE(zmexp::solve_epsilon0(lam, m), zmexp::epsilon0_lower_bound(lam, m) - 1e-12);
}

TEST(Epsilon0, DomainErrors) {
  EXPECT_THROW(zmexp::solve_epsilon0(0.0, 2), std::domain_error);
  EXPECT_THROW(zmexp::solve_epsilon0(-1.0, 2), std::domain_error);
  EXPECT_THROW(zmexp::solve_epsilon0(1.0, 1), std::domain_error);
  EXPECT_THROW(zmexp::solve_epsilon0(NAN, 2), std::domain_error);
}

TEST(X0, SaturatesAtMinusM) {
  // (m/e)^m <= eps0/|lambda| for small |lambda|.
  EXPECT_DOUBLE_EQ(zmexp::make_certificates(0.1, 2).x0, -2.0);
  EXPECT_DOUBLE_EQ(zmexp::make_certificates(1.0, 2).x0, -2.0);
}

TEST(X0, AgreesWithToms748) {
  for (int m = 2; m <= 6; ++m)
    for (double lam : {0.5, 2.0, 10.0, 50.0, 500.0}) {
      const auto c = zmexp::make_certificates(lam, m);
      EXPECT_NEAR(c.x0, x0_oracle(lam, m), 1e-9) << "m=" << m << " |lambda|=" << lam;
      EXPECT_LE(c.x0, -m);
    }
  EXPECT_NEAR(zmexp::make_certificates(10.0, 2).x0, -9.116651969249943, 1e-9);
}

TEST(HalfWidth, KnownValue) {
  const auto c = zmexp::make_certificates(1.0, 2);
  const double expect = std::sqrt(0.5671432904097838 * std::exp(10.0) - 100.0);
  EXPECT_NEAR(zmexp::half_width(-10.0, c), expect, 1e-9 * expect);
  EXPECT_NEAR(zmexp::half_width(-10.0, c), 111.32, 0.01);
}

TEST(HalfWidth, HugeForVeryNegativeX) {
  const auto c = zmexp::make_certificates(1.0, 2);
  EXPECT_TRUE(std::isinf(zmexp::half_width(-2000.0, c)));
  EXPECT_GT(zmexp::half_width(-1000.0, c), 1e100);
}

TEST(InH, Membership) {
  const auto c = zmexp::make_certificates(1.0, 2);
  EXPECT_TRUE(zmexp::in_H({c.x0 - 1.0, 0.0}, c));
  EXPECT_FALSE(zmexp::in_H({c.x0, 0.0}, c));
  EXPECT_FALSE(zmexp::in_H({c.x0 + 1.0, 0.0}, c));
  const double w = zmexp::half_width(-10.0, c);
  EXPECT_TRUE(zmexp::in_H({-10.0, 0.999 * w}, c));
  EXPECT_FALSE(zmexp::in_H({-10.0, w}, c));
  EXPECT_FALSE(zmexp::in_H({-10.0, -1.001 * w}, c));
}

TEST(InH, MapsIntoTrap) {
  const MapParams p({-2.1, 0.0}, 2);
  const auto c = zmexp::make_certificates(p);
  for (double x = c.x0 - 0.01; x > c.x0 - 40.0; x -= 0.37) {
    const double w = zmexp::half_width(x, c);
    for (double f : {0.0, 0.5, -0.9, 0.999999})
      EXPECT_LT(std::abs(zmexp::eval_map({x, f * w}, p)), c.epsilon0 + 1e-9);
  }
}

TEST(SigmaCurve, PolarEquationHolds) {
  const MapParams p({0.3, -1.2}, 3);
  for (int k = -4; k <= 4; ++k) {
    const auto curve = zmexp::sigma_curve(k, p, 500);
    ASSERT_EQ(curve.points.size(), curve.params.size());
    ASSERT_GE(curve.points.size(), 2u);
    const double c = (2 * k + 1) * kPi - p.arg_lambda();
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const double alpha = curve.params[i];
      EXPECT_NEAR(curve.points[i].imag(), c - 3 * alpha, 1e-9 * std::max(1.0, std::abs(c)));
      EXPECT_NEAR(std::arg(curve.points[i]), alpha, 1e-9);
    }
  }
}

TEST(SigmaCurve, ArgumentIsPi) {
  const MapParams p({1.0, 0.0}, 2);
  for (int k = -6; k <= 6; ++k)
    for (Complex z : zmexp::sigma_curve(k, p, 300).points) {
      const Complex v = zmexp::eval_map(z, p);
      if (std::isnormal(std::abs(v))) {
        EXPECT_NEAR(std::abs(zmexp::wrap_angle(std::arg(v) - kPi)), 0.0, 1e-9);
      }
    }
}

TEST(SigmaCurve, RejectsTooFewSamples) {
  EXPECT_THROW(zmexp::sigma_curve(0, MapParams({1.0, 0.0}, 2), 1), std::invalid_argument);
}

TEST(StripBounds, CenterAndHalfWidth) {
  const auto s = zmexp::strip_bounds(0, MapParams({0.0, 1.0}, 2));
  EXPECT_DOUBLE_EQ(s.center, kPi / 2);
  EXPECT_DOUBLE_EQ(s.half_width, kPi / 2);
  const auto s2 = zmexp::strip_bounds(-1, MapParams({-1.0, 0.0}, 5));
  EXPECT_NEAR(s2.center, -2 * kPi, 1e-15);
}

TEST(WrapAngle, Range) {
  EXPECT_DOUBLE_EQ(zmexp::wrap_angle(3 * kPi), kPi);
  EXPECT_NEAR(zmexp::wrap_angle(-3 * kPi + 0.1), -kPi + 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(zmexp::wrap_angle(0.25), 0.25);
}
