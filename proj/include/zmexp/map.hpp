#pragma once
/**
 * \file map.hpp
 * \brief The family F(z) = lambda * z^m * exp(z), m >= 2, and its derivative.
 *
 * Evaluation uses an integer power by repeated squaring so that small |z| is
 * exact (F(0) == 0) and free of branch cuts. When the direct product is not
 * finite but the true value is (huge |z| far to the left, where z^m overflows
 * while exp(z) underflows), the value is recomputed in log-polar form.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zmexp {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// One member of the family: the pair (lambda, m).
class MapParams {
public:
  MapParams(Complex lambda, int m) : lambda_(lambda), m_(m) {
    if (m < 2)
      throw std::invalid_argument("m must be >= 2 (got " + std::to_string(m) + ")");
    if (!is_finite(lambda))
      throw std::invalid_argument("lambda must be finite");
    if (lambda == Complex(0.0, 0.0))
      throw std::invalid_argument("lambda must be non-zero");
  }

  Complex lambda() const { return lambda_; }
  int m() const { return m_; }
  double abs_lambda() const { return std::abs(lambda_); }
  /// Principal argument in (-pi, pi].
  double arg_lambda() const { return std::arg(lambda_); }

  friend bool operator==(const MapParams&, const MapParams&) = default;

private:
  Complex lambda_;
  int m_;
};

/// z^n for n >= 0 by repeated squaring.
inline Complex ipow(Complex z, int n) {
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1)
      result *= z;
    n >>= 1;
    if (n > 0)
      z *= z;
  }
  return result;
}

inline double ipow(double x, int n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1)
      result *= x;
    n >>= 1;
    if (n > 0)
      x *= x;
  }
  return result;
}

/// A value written as exp(log_modulus) * exp(i * phase). The phase is not
/// reduced modulo 2pi.
struct PolarValue {
  double log_modulus;
  double phase;
};

/// F(z) in log-polar form: log|F| = log|lambda| + m log|z| + Re z and
/// arg F = Arg(lambda) + m Arg(z) + Im z. Never overflows for finite z.
inline PolarValue eval_map_polar(Complex z, const MapParams& p) {
  const double log_mod = std::log(p.abs_lambda()) + p.m() * std::log(std::abs(z)) + z.real();
  const double phase = p.arg_lambda() + p.m() * std::arg(z) + z.imag();
  return {log_mod, phase};
}

namespace detail {

inline Complex from_polar_or(Complex fallback, double log_modulus, double phase) {
  if (std::isfinite(log_modulus) && log_modulus < 709.0)
    return std::polar(std::exp(log_modulus), phase);
  return fallback;
}

} // namespace detail

/// Beyond this |Re z|, e^z alone is subnormal or infinite and loses the phase.
inline constexpr double kExpSafeRe = 700.0;

/// lambda * z^m * e^z. Overflow yields a non-finite complex value, never a throw.
inline Complex eval_map(Complex z, const MapParams& p) {
  if (z == Complex(0.0, 0.0))
    return {0.0, 0.0};
  if (std::abs(z.real()) > kExpSafeRe && is_finite(z)) {
    const PolarValue pv = eval_map_polar(z, p);
    return detail::from_polar_or({INFINITY, INFINITY}, pv.log_modulus, pv.phase);
  }
  const Complex value = p.lambda() * ipow(z, p.m()) * std::exp(z);
  if (is_finite(value) || !is_finite(z))
    return value;
  const PolarValue pv = eval_map_polar(z, p);
  return detail::from_polar_or(value, pv.log_modulus, pv.phase);
}

/// F'(z) = lambda * e^z * z^(m-1) * (m + z). Zero exactly at z = 0 and z = -m.
inline Complex eval_derivative(Complex z, const MapParams& p) {
  const Complex shifted = Complex(p.m(), 0.0) + z;
  if (z == Complex(0.0, 0.0) || shifted == Complex(0.0, 0.0))
    return {0.0, 0.0};
  const bool safe = std::abs(z.real()) <= kExpSafeRe;
  const Complex value = safe ? p.lambda() * std::exp(z) * ipow(z, p.m() - 1) * shifted
                             : Complex(INFINITY, INFINITY);
  if ((safe && is_finite(value)) || !is_finite(z))
    return value;
  const double log_mod = std::log(p.abs_lambda()) + z.real() + (p.m() - 1) * std::log(std::abs(z)) +
                         std::log(std::abs(shifted));
  const double phase = p.arg_lambda() + z.imag() + (p.m() - 1) * std::arg(z) + std::arg(shifted);
  return detail::from_polar_or(value, log_mod, phase);
}

/// The free critical value F(-m) = (-1)^m * lambda * (m/e)^m.
inline Complex critical_value(const MapParams& p) {
  const int m = p.m();
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * p.lambda() * std::pow(m / std::numbers::e, m);
}

/// The free critical point -m.
inline Complex critical_point(const MapParams& p) { return {-static_cast<double>(p.m()), 0.0}; }

} // namespace zmexp
