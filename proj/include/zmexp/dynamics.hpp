#pragma once
/**
 * \file dynamics.hpp
 * \brief Orbit iteration with trap/H/escape certificates and the per-point
 * verdict used by the dynamical-plane renderer.
 */

#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <variant>

#include "map.hpp"
#include "regions.hpp"

namespace zmexp {

struct IterationPolicy {
  int max_iter = 200;
  double escape_re = 50.0;
  double overflow_re = 700.0;
  /// Trap disk radius; 0 means "use the certificate's epsilon0".
  double trap_radius = 0.0;

  void validate() const {
    if (max_iter < 1)
      throw std::invalid_argument("max_iter must be >= 1");
    if (!(escape_re <= overflow_re))
      throw std::invalid_argument("escape_re must not exceed overflow_re");
    if (!(trap_radius >= 0.0))
      throw std::invalid_argument("trap_radius must be >= 0");
  }

  double trap_for(const RegionCertificates& c) const {
    return trap_radius > 0.0 ? trap_radius : c.epsilon0;
  }

  friend bool operator==(const IterationPolicy&, const IterationPolicy&) = default;
};

struct EnteredTrap {
  int step;
};
struct EnteredH {
  int step;
};
struct Escaped {
  int step;
};
struct Undecided {
  int steps_run;
};

using OrbitOutcome = std::variant<EnteredTrap, EnteredH, Escaped, Undecided>;

inline int outcome_step(const OrbitOutcome& o) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Undecided>)
          return v.steps_run;
        else
          return v.step;
      },
      o);
}

struct NoObserver {
  void operator()(int, Complex) const noexcept {}
};

/**
 * Iterates z_{n+1} = F(z_n) from z_0 = z0. At each step n (z0 is step 0) the
 * tests run in this order: |z_n| < epsilon0 (trap), z_n in H, Re z_n > escape_re,
 * Re z_n > overflow_re or non-finite. After max_iter applications of the map
 * without a verdict the orbit is Undecided.
 *
 * `observe(n, z_n)` is called for every visited iterate before the tests.
 */
template <class Observer = NoObserver>
OrbitOutcome iterate_orbit(Complex z0, const MapParams& p, const IterationPolicy& pol,
                           const RegionCertificates& certs, Observer&& observe = {}) {
  const double trap = pol.trap_for(certs);
  const double trap_sq = trap * trap;
  Complex z = z0;
  for (int n = 0;; ++n) {
    observe(n, z);
    if (std::norm(z) < trap_sq)
      return EnteredTrap{n};
    if (in_H(z, certs))
      return EnteredH{n};
    if (z.real() > pol.escape_re)
      return Escaped{n};
    if (z.real() > pol.overflow_re || !is_finite(z))
      return Escaped{n};
    if (n == pol.max_iter)
      return Undecided{n};
    z = eval_map(z, p);
  }
}

/// Closed verdict set shared by both planes. In the parameter plane Basin0
/// reads "captured" and OtherBounded reads "bounded, not captured".
enum class Verdict : std::uint8_t {
  Basin0 = 0,
  Escaping = 1,
  OtherBounded = 2,
  Captured = Basin0,
  BoundedUncaptured = OtherBounded,
};

inline Verdict to_verdict(const OrbitOutcome& o) {
  if (std::holds_alternative<EnteredTrap>(o) || std::holds_alternative<EnteredH>(o))
    return Verdict::Basin0;
  if (std::holds_alternative<Escaped>(o))
    return Verdict::Escaping;
  return Verdict::OtherBounded;
}

/// Undecided orbits are reported as OtherBounded; raising max_iter moves
/// deep-basin points out of that bucket.
inline Verdict classify_dynamical_point(Complex z0, const MapParams& p, const IterationPolicy& pol,
                                        const RegionCertificates& certs) {
  return to_verdict(iterate_orbit(z0, p, pol, certs));
}

} // namespace zmexp
