#pragma once
/**
 * \file parameter.hpp
 * \brief Parameter plane: fate of the free critical orbit and the certified
 * geometry of the capture zones.
 *
 * Zone summary for r_m = (e/m)^m:
 *   - C^0 contains |lambda| < min(1/e, r_m) and lies in |lambda| <= (e/(m-1))^(m-1).
 *   - C^2 contains the wedge |lambda| > D0, |Arg lambda| > alpha (m even) or
 *     |Arg lambda| < pi - alpha (m odd); the critical value lands in H.
 *   - C^3 contains horizontal strips of width r_m * pi around the curves Gamma_k.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "curves.hpp"
#include "dynamics.hpp"
#include "map.hpp"
#include "regions.hpp"

namespace zmexp {

enum class CaptureCertificate { TrapDisk, HRegion };

namespace param {

struct Escaping {
  int step;
};
struct Captured {
  int first_trap_step;
  CaptureCertificate certificate;
};
/// Iteration exhausted and the orbit settled on an attracting cycle.
struct BoundedUncaptured {
  int steps_run;
  int period;
};
/// Iteration exhausted without a detected cycle.
struct Undecided {
  int steps_run;
};

} // namespace param

using ParamClass =
    std::variant<param::Escaping, param::Captured, param::BoundedUncaptured, param::Undecided>;

/// Both exhausted tags render as the same bounded colour.
inline Verdict to_verdict(const ParamClass& c) {
  if (std::holds_alternative<param::Captured>(c))
    return Verdict::Captured;
  if (std::holds_alternative<param::Escaping>(c))
    return Verdict::Escaping;
  return Verdict::BoundedUncaptured;
}

inline int class_step(const ParamClass& c) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, param::Escaping>)
          return v.step;
        else if constexpr (std::is_same_v<T, param::Captured>)
          return v.first_trap_step;
        else
          return v.steps_run;
      },
      c);
}

/// r_m = (e/m)^m.
inline double r_const(int m) {
  if (m < 2)
    throw std::domain_error("m must be >= 2");
  return std::pow(std::numbers::e / m, m);
}

namespace detail {

/// Last `N` iterates in a ring, used to spot an attracting cycle once the
/// iteration budget is exhausted.
class OrbitTail {
public:
  static constexpr int N = 64;

  void operator()(int n, Complex z) {
    ring_[static_cast<std::size_t>(n % N)] = z;
    last_ = n;
  }

  /// Smallest period p <= min(N-1, last) with |z_last - z_{last-p}| small, or 0.
  int period(double tol = 1e-9) const {
    if (last_ < 1)
      return 0;
    const Complex z = ring_[static_cast<std::size_t>(last_ % N)];
    const double scale = std::max(1.0, std::abs(z));
    for (int p = 1; p < N && p <= last_; ++p) {
      const Complex w = ring_[static_cast<std::size_t>((last_ - p) % N)];
      if (std::abs(z - w) <= tol * scale)
        return p;
    }
    return 0;
  }

private:
  std::array<Complex, N> ring_{};
  int last_ = -1;
};

} // namespace detail

/**
 * Iterates the critical point -m. The reported first_trap_step is the first
 * iterate certified to lie in the trap disk or in H; it is an upper bound for
 * the index n of the capture zone C^n (exact membership in the immediate basin
 * is not decidable from these certificates).
 */
inline ParamClass classify_parameter(Complex lambda, int m, const IterationPolicy& pol) {
  const MapParams p(lambda, m);
  const RegionCertificates certs = make_certificates(p);
  detail::OrbitTail tail;
  const OrbitOutcome o = iterate_orbit(critical_point(p), p, pol, certs, tail);
  if (const auto* t = std::get_if<EnteredTrap>(&o))
    return param::Captured{t->step, CaptureCertificate::TrapDisk};
  if (const auto* h = std::get_if<EnteredH>(&o))
    return param::Captured{h->step, CaptureCertificate::HRegion};
  if (const auto* e = std::get_if<Escaped>(&o))
    return param::Escaping{e->step};
  const int steps = std::get<Undecided>(o).steps_run;
  if (const int period = tail.period(); period > 0)
    return param::BoundedUncaptured{steps, period};
  return param::Undecided{steps};
}

struct DiskBounds {
  double inner_radius; ///< C^0 contains |lambda| < inner
  double outer_radius; ///< C^0 lies inside |lambda| <= outer
};

inline DiskBounds c0_bounds(int m) {
  const double inner = std::min(1.0 / std::numbers::e, r_const(m));
  const double outer = std::pow(std::numbers::e / (m - 1), m - 1);
  return {inner, outer};
}

/// True when F(-m) lies in H, which puts F^2(-m) in the trap disk.
inline bool c2_certificate(Complex lambda, int m) {
  const MapParams p(lambda, m);
  return in_H(critical_value(p), make_certificates(p));
}

/// log l(lambda1); -inf at lambda1 = 0.
inline double log_l_aux(double lambda1, int m) {
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double a = std::abs(lambda1);
  const double drift = sign * lambda1 / r_const(m);
  if (a > 1.0 / std::numbers::e) {
    const double extra = 1.0 / (m - 1);
    return (m + 1 + extra) * std::log(a) + drift + extra;
  }
  return (m + 1) * std::log(a) + drift;
}

/**
 * l(lambda1) = |lambda1|^(m+1+1/(m-1)) exp((-1)^m lambda1/r_m) exp(1/(m-1))  if |lambda1| > 1/e
 *            = |lambda1|^(m+1) exp((-1)^m lambda1/r_m)                        otherwise.
 * l(lambda1) < r_m^m is a sufficient condition for F(-m) in H for real lambda1.
 */
inline double l_aux(double lambda1, int m) { return std::exp(log_l_aux(lambda1, m)); }

inline constexpr double kD0ScanMin = 1e-8;
inline constexpr double kD0ScanMax = 1e3;
inline constexpr int kD0ScanSamples = 10000;

/**
 * D0 > 0 with l < r_m^m on (-inf, -D0) for m even or (D0, +inf) for m odd:
 * the outermost crossing of l = r_m^m, located on a log-spaced scan of
 * |lambda1| in [1e-8, 1e3] and refined by bisection.
 */
inline double solve_d0(int m) {
  const double dir = (m % 2 == 0) ? -1.0 : 1.0;
  const double level = m * std::log(r_const(m));
  auto f = [&](double a) { return log_l_aux(dir * a, m) - level; };

  const double log_lo = std::log(kD0ScanMin);
  const double log_hi = std::log(kD0ScanMax);
  auto node = [&](int i) {
    return std::exp(log_lo + (log_hi - log_lo) * i / (kD0ScanSamples - 1));
  };
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "solve_d0(m=" << m << "): " << why << " in scan range |lambda1| in [" << kD0ScanMin
       << ", " << kD0ScanMax << "]";
    return std::runtime_error(os.str());
  };

  if (f(node(kD0ScanSamples - 1)) >= 0.0)
    throw fail("l(lambda1) >= r_m^m at the end of the scan; crossing lies beyond");
  for (int i = kD0ScanSamples - 2; i >= 0; --i) {
    if (f(node(i)) >= 0.0) {
      // f(node(i)) >= 0 > f(node(i+1)); bisect the decreasing crossing.
      return detail::bisect_increasing([&](double a) { return -f(a); }, node(i), node(i + 1));
    }
  }
  throw fail("no crossing of l(lambda1) = r_m^m");
}

/**
 * Angle alpha(|lambda|, m) in (pi/2, pi) bounding the C^2 wedge. The circle
 * |w| = |lambda|/r_m traced by the critical value meets the boundary of H at
 * zeta = t1 + i C(t1) with t1 = ln(epsilon0 r_m^m / |lambda|^(m+1)).
 */
inline double c2_alpha(double abs_lambda, int m) {
  const RegionCertificates certs = make_certificates(abs_lambda, m);
  const double rm = r_const(m);
  const double t1 =
      std::log(certs.epsilon0) + m * std::log(rm) - (m + 1) * std::log(abs_lambda);
  if (!(t1 < 0.0))
    throw std::domain_error("c2_alpha: |lambda| = " + std::to_string(abs_lambda) +
                            " is too small (intersection abscissa is not negative)");
  if (t1 < certs.x0)
    return std::atan2(half_width(t1, certs), t1);
  // On the circle H membership is Re w < min(x0, t1); the arc ends at Re w = x0.
  const double radius = abs_lambda / rm;
  if (!(certs.x0 > -radius))
    throw std::domain_error("c2_alpha: critical-value circle misses H");
  return std::acos(certs.x0 / radius);
}

struct C2Geometry {
  int m = 2;
  double d0 = 0.0;

  /// alpha(|lambda|, m); requires |lambda| > d0.
  double alpha(double abs_lambda) const { return c2_alpha(abs_lambda, m); }

  /// Whether lambda lies in the certified C^2 wedge.
  bool contains(Complex lambda) const {
    const double r = std::abs(lambda);
    if (!(r > d0))
      return false;
    const double a = alpha(r);
    const double arg = std::abs(std::arg(lambda));
    return (m % 2 == 0) ? arg > a : arg < std::numbers::pi - a;
  }
};

inline C2Geometry make_c2_geometry(int m) { return {m, solve_d0(m)}; }

/**
 * Gamma_k: parameters whose critical value lies on sigma_k.
 *   m even: |lambda| = r_m ((2k+1)pi - (m+1)theta) / sin(theta)
 *   m odd:  |lambda| = r_m ((2k+1-m)pi - (m+1)theta) / (-sin(theta))
 * sampled where the radius is positive.
 */
inline CurvePolyline gamma_curve(int k, int m, int theta_samples) {
  const double rm = r_const(m);
  const bool even = m % 2 == 0;
  const double c = (even ? (2.0 * k + 1.0) : (2.0 * k + 1.0 - m)) * std::numbers::pi;
  return detail::sample_polar_curve(CurveKind::GammaParameter, k, rm, c, m + 1.0, even ? +1 : -1,
                                    theta_samples);
}

struct ImInterval {
  double lo;
  double hi;
};

/// Im(lambda) interval of the C^3 strip of index k (width r_m * pi).
inline ImInterval c3_strip_bounds(int k, int m) {
  const double rm = r_const(m);
  constexpr double pi = std::numbers::pi;
  if (m % 2 == 0)
    return {rm * (0.5 * pi + 2.0 * k * pi), rm * (1.5 * pi + 2.0 * k * pi)};
  return {rm * (-0.5 * pi + 2.0 * k * pi), rm * (0.5 * pi + 2.0 * k * pi)};
}

inline constexpr int kDefaultMarginSamples = 4096;

/// min over |z| = m-1 of |F(z)| - (m-1); positive means the closed disk of
/// radius m-1 is strictly inside its image (polynomial-like hypothesis).
inline double polynomial_like_margin(Complex lambda, int m, int samples = kDefaultMarginSamples) {
  if (samples < 8)
    throw std::invalid_argument("polynomial_like_margin needs at least 8 samples");
  const MapParams p(lambda, m);
  const double radius = m - 1.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    lowest = std::min(lowest, std::abs(eval_map(std::polar(radius, theta), p)));
  }
  return lowest - radius;
}

} // namespace zmexp
