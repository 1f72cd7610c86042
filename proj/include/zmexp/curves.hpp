#pragma once
/**
 * \file curves.hpp
 * \brief Sampled polar curves r = scale * (c - s*t) / (orient * sin t) and the
 * polyline type shared by the dynamical (sigma_k) and parameter (Gamma_k) planes.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "map.hpp"

namespace zmexp {

enum class CurveKind { SigmaDynamical, GammaParameter };

struct CurvePolyline {
  CurveKind kind = CurveKind::SigmaDynamical;
  int k = 0;
  std::vector<double> params; ///< angle parameter of each sample, increasing
  std::vector<Complex> points;
  double param_lo = 0.0;
  double param_hi = 0.0;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

/// Inset applied at every endpoint of an angular interval (sin t -> 0 and r -> 0 ends).
inline constexpr double kAngleInset = 1e-6;

namespace detail {

struct AngleInterval {
  double lo;
  double hi;
};

/// Sub-intervals of (-pi, 0) U (0, pi) on which (c - s*t) / (orient * sin t) > 0,
/// with s > 0 and orient = +-1.
inline std::vector<AngleInterval> positive_radius_domain(double c, double s, int orient) {
  constexpr double pi = std::numbers::pi;
  const double root = c / s;
  std::vector<AngleInterval> out;
  auto push = [&](double lo, double hi) {
    lo = std::max(lo, -pi);
    hi = std::min(hi, pi);
    if (hi - lo > 2.0 * kAngleInset)
      out.push_back({lo, hi});
  };
  // Negative half: sin t < 0, so need orient*(c - s t) < 0.
  if (orient > 0)
    push(std::max(-pi, root), 0.0);
  else
    push(-pi, std::min(0.0, root));
  // Positive half: sin t > 0, so need orient*(c - s t) > 0.
  if (orient > 0)
    push(0.0, std::min(pi, root));
  else
    push(std::max(0.0, root), pi);
  return out;
}

/// Samples r(t) e^{it} on the positive-radius domain. `samples` is the total
/// budget, split across sub-intervals by length (at least 2 each).
inline CurvePolyline sample_polar_curve(CurveKind kind, int k, double scale, double c, double s,
                                        int orient, int samples) {
  if (samples < 2)
    throw std::invalid_argument("curve sampling needs at least 2 samples");
  CurvePolyline curve;
  curve.kind = kind;
  curve.k = k;
  const auto domain = positive_radius_domain(c, s, orient);
  if (domain.empty())
    return curve;

  double total = 0.0;
  for (const auto& iv : domain)
    total += iv.hi - iv.lo;

  curve.param_lo = domain.front().lo;
  curve.param_hi = domain.back().hi;
  int used = 0;
  for (std::size_t d = 0; d < domain.size(); ++d) {
    const auto& iv = domain[d];
    const int share = (d + 1 == domain.size())
                          ? samples - used
                          : static_cast<int>(std::lround(samples * (iv.hi - iv.lo) / total));
    const int n = std::max(share, 2);
    used += n;
    const double a = iv.lo + kAngleInset;
    const double b = iv.hi - kAngleInset;
    for (int i = 0; i < n; ++i) {
      const double t = a + (b - a) * i / (n - 1);
      const double r = scale * (c - s * t) / (orient * std::sin(t));
      if (!(r > 0.0) || !std::isfinite(r))
        continue;
      curve.params.push_back(t);
      curve.points.push_back(std::polar(r, t));
    }
  }
  return curve;
}

} // namespace detail

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(a, two_pi);
  if (w <= -std::numbers::pi)
    w += two_pi;
  return w;
}

} // namespace zmexp
