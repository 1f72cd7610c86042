#pragma once
/**
 * \file regions.hpp
 * \brief Certified pieces of the basin of 0: the trap disk radius epsilon0, the
 * abscissa x0, the half-width C(x) of the left region H, and the strips around
 * the preimage curves sigma_k of the negative real axis.
 *
 * All roots are found by bisection on a monotone function written in log form,
 * so huge and tiny |lambda| do not overflow.
 */

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "curves.hpp"
#include "map.hpp"

namespace zmexp {

inline constexpr double kDefaultRootTol = 1e-12;

struct RegionCertificates {
  double abs_lambda = 1.0;
  int m = 2;
  double epsilon0 = 0.0; ///< radius of the forward-invariant trap disk
  double x0 = -2.0;      ///< H lies in Re z < x0
  double tol = kDefaultRootTol;

  friend bool operator==(const RegionCertificates&, const RegionCertificates&) = default;
};

/// h(x) = x^m e^x. Evaluated in log form far to the left so it underflows to 0.
inline double h_aux(double x, int m) {
  if (m < 1)
    throw std::invalid_argument("h_aux needs m >= 1");
  if (x < -700.0) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(m * std::log(-x) + x);
  }
  return ipow(x, m) * std::exp(x);
}

namespace detail {

/// Bisection of an increasing function on [lo, hi] with f(lo) < 0 <= f(hi),
/// run until the bracket stops shrinking in floating point.
template <class Fn>
double bisect_increasing(Fn&& f, double lo, double hi) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi)
      break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

inline void require_lambda_m(double abs_lambda, int m) {
  if (!(abs_lambda > 0.0) || !std::isfinite(abs_lambda))
    throw std::domain_error("|lambda| must be positive and finite (got " +
                            std::to_string(abs_lambda) + ")");
  if (m < 2)
    throw std::domain_error("m must be >= 2 (got " + std::to_string(m) + ")");
}

} // namespace detail

/// Unique positive root of x^(m-1) e^x = 1/|lambda|.
inline double solve_epsilon0(double abs_lambda, int m, double tol = kDefaultRootTol) {
  detail::require_lambda_m(abs_lambda, m);
  if (!(tol > 0.0))
    throw std::domain_error("tol must be positive");
  const double log_lambda = std::log(abs_lambda);
  // log of x^(m-1) e^x |lambda|; increasing on (0, inf).
  auto g = [&](double x) { return (m - 1) * std::log(x) + x + log_lambda; };

  double lo = 1.0;
  double hi = 1.0;
  if (g(1.0) < 0.0) {
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    while (g(lo) >= 0.0) {
      hi = lo;
      lo *= 0.5;
    }
  }
  const double root = detail::bisect_increasing(g, lo, hi);
  const double residual = std::expm1(g(root));
  if (!(std::abs(residual) <= tol))
    throw std::runtime_error("epsilon0 bisection did not reach the requested tolerance");
  return root;
}

/// min(1, (1/(|lambda| e))^(1/(m-1))); epsilon0 is never below this.
inline double epsilon0_lower_bound(double abs_lambda, int m) {
  detail::require_lambda_m(abs_lambda, m);
  return std::min(1.0, std::pow(1.0 / (abs_lambda * std::numbers::e), 1.0 / (m - 1)));
}

/// x0 <= -m such that |h(x)| <= epsilon0/|lambda| for all x <= x0.
inline double solve_x0(double abs_lambda, int m, double epsilon0) {
  detail::require_lambda_m(abs_lambda, m);
  const double ratio = epsilon0 / abs_lambda;
  const double at_critical = std::pow(m / std::numbers::e, m); // |h(-m)|
  if (at_critical <= ratio)
    return -static_cast<double>(m);

  const double log_ratio = std::log(ratio);
  // log|h(x)| - log(ratio), increasing on (-inf, -m).
  auto q = [&](double x) { return m * std::log(-x) + x - log_ratio; };
  double hi = -static_cast<double>(m);
  double lo = -2.0 * m;
  while (q(lo) > 0.0) {
    hi = lo;
    lo *= 2.0;
  }
  return detail::bisect_increasing(q, lo, hi);
}

inline RegionCertificates make_certificates(double abs_lambda, int m, double tol = kDefaultRootTol) {
  RegionCertificates c;
  c.abs_lambda = abs_lambda;
  c.m = m;
  c.tol = tol;
  c.epsilon0 = solve_epsilon0(abs_lambda, m, tol);
  c.x0 = solve_x0(abs_lambda, m, c.epsilon0);
  return c;
}

inline RegionCertificates make_certificates(const MapParams& p, double tol = kDefaultRootTol) {
  return make_certificates(p.abs_lambda(), p.m(), tol);
}

/// C(x) = sqrt((epsilon0/|lambda|)^(2/m) e^(-2x/m) - x^2), clamped to 0.
inline double half_width(double x, const RegionCertificates& c) {
  const double t = (2.0 / c.m) * (std::log(c.epsilon0 / c.abs_lambda) - x);
  if (t > 709.0)
    return std::numeric_limits<double>::infinity();
  const double radicand = std::exp(t) - x * x;
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

/// z in H: Re z < x0 and |Im z| < C(Re z).
inline bool in_H(Complex z, const RegionCertificates& c) {
  return z.real() < c.x0 && std::abs(z.imag()) < half_width(z.real(), c);
}

/// Preimage curve sigma_k of the negative real axis,
/// r = ((2k+1)pi - m*alpha - Arg(lambda)) / sin(alpha).
inline CurvePolyline sigma_curve(int k, const MapParams& p, int alpha_samples) {
  const double c = (2.0 * k + 1.0) * std::numbers::pi - p.arg_lambda();
  return detail::sample_polar_curve(CurveKind::SigmaDynamical, k, 1.0, c, p.m(), +1, alpha_samples);
}

struct StripBounds {
  double center;
  double half_width;
};

/// Asymptotic cross-section of the strip S_k as Re z -> +inf (width pi).
inline StripBounds strip_bounds(int k, const MapParams& p) {
  return {(2.0 * k + 1.0) * std::numbers::pi - p.arg_lambda(), 0.5 * std::numbers::pi};
}

} // namespace zmexp
