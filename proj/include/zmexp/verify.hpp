#pragma once
/**
 * \file verify.hpp
 * \brief Reproducible numerical checks of the certified regions and zone
 * geometry, aggregated into a machine-readable report.
 *
 * Every check owns its random stream (seeded from the suite seed and the check
 * id), so results do not depend on scheduling. Each check has a designated
 * corruption that must make it fail; the corruption knobs only touch the
 * inputs a check builds, never the library under test.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curves.hpp"
#include "dynamics.hpp"
#include "map.hpp"
#include "parameter.hpp"
#include "regions.hpp"
#include "render.hpp"
#include "serialize.hpp"

namespace zmexp::verify {

enum class CheckId : int {
  FixedPoint = 0,
  Multiplier,
  SchwarzContraction,
  TrapSoundness,
  Determinism,
  DefiningResidual,
  LowerBound,
  TrapInvariance,
  HIntoTrap,
  WedgeLemma,
  SigmaIdentity,
  InnerDiskCapture,
  OuterBoundMargin,
  CriticalShift,
  GammaIdentity,
  C3StripCapture,
  C2WedgeCapture,
};

inline constexpr int kCheckCount = 17;

struct CheckInfo {
  CheckId id;
  const char* key;
  const char* module;
  const char* statement;
  double tolerance;
  bool strict; ///< pass iff worst < tolerance (else worst <= tolerance)
};

inline const std::vector<CheckInfo>& all_checks() {
  static const std::vector<CheckInfo> checks = {
      {CheckId::FixedPoint, "core.fixed_point", "core-dynamics",
       "lambda real > 0: |F(eps0) - eps0| < 1e-9", 1e-9, true},
      {CheckId::Multiplier, "core.multiplier", "core-dynamics",
       "lambda real > 0: |F'(eps0) - (m + eps0)| < 1e-8", 1e-8, true},
      {CheckId::SchwarzContraction, "core.schwarz_contraction", "core-dynamics",
       "|z| <= eps0 (1 - 1e-12): |F(z)| <= |z| (10^4 samples per parameter)", 0.0, false},
      {CheckId::TrapSoundness, "core.trap_soundness", "core-dynamics",
       "after EnteredTrap, |z| strictly decreases for 50 further steps", 0.0, true},
      {CheckId::Determinism, "core.determinism", "core-dynamics",
       "identical inputs give bit-identical orbits and tiled renders", 0.0, false},
      {CheckId::DefiningResidual, "regions.defining_residual", "analytic-regions",
       "|eps0^(m-1) e^eps0 |lambda| - 1| < 1e-10 on |lambda| in [1e-3,1e3] x m in 2..8", 1e-10, true},
      {CheckId::LowerBound, "regions.lower_bound", "analytic-regions",
       "eps0 >= min(1, (1/(|lambda| e))^(1/(m-1))) - 1e-12", 1e-12, false},
      {CheckId::TrapInvariance, "regions.trap_invariance", "analytic-regions",
       "|z| < eps0: |F(z)| <= |z| <= eps0 (10^4 samples per parameter)", 0.0, false},
      {CheckId::HIntoTrap, "regions.h_into_trap", "analytic-regions",
       "z in H: |F(z)| < eps0 + 1e-9 (10^4 samples per parameter)", 1e-9, true},
      {CheckId::WedgeLemma, "regions.wedge_lemma", "analytic-regions",
       "x + iA|x|^k lies in H below a finite threshold and for 100 further samples", 0.0, false},
      {CheckId::SigmaIdentity, "regions.sigma_identity", "analytic-regions",
       "sigma_k samples (k in -6..6): |Arg F(z) - pi| < 1e-9", 1e-9, true},
      {CheckId::InnerDiskCapture, "parameter.inner_disk_capture", "parameter-plane",
       "|lambda| < min(1/e, r_m): Captured with first_trap_step <= 1 (10^3 per m)", 0.0, false},
      {CheckId::OuterBoundMargin, "parameter.outer_bound_margin", "parameter-plane",
       "|lambda| > 1.01 (e/(m-1))^(m-1): min_{|z|=m-1} |F(z)| - (m-1) > 0 (10^3 per m)", 0.0, true},
      {CheckId::CriticalShift, "parameter.critical_shift", "parameter-plane",
       "orbit of -m is the orbit of F(-m) shifted by one step", 0.0, false},
      {CheckId::GammaIdentity, "parameter.gamma_identity", "parameter-plane",
       "Gamma_k samples (k in -6..6): Arg(lambda) + m Arg(w) + Im(w) = (2k+1)pi mod 2pi within 1e-9",
       1e-9, true},
      {CheckId::C3StripCapture, "parameter.c3_strip_capture", "parameter-plane",
       "mid-strip lambda (k = 0), Re F(-m) scanned outward until stable: Captured, step <= 3", 0.0,
       false},
      {CheckId::C2WedgeCapture, "parameter.c2_wedge_capture", "parameter-plane",
       "|lambda| > D0 inside the alpha wedge (margin 0.01): c2 certificate and Captured, step <= 2",
       0.0, false},
  };
  return checks;
}

inline const CheckInfo& check_info(CheckId id) { return all_checks().at(static_cast<std::size_t>(id)); }

/// Input perturbations used as negative controls. Identity values by default.
struct Corruption {
  double epsilon0_scale = 1.0;
  double half_width_scale = 1.0;
  double phase_offset = 0.0;
  double inner_radius_scale = 1.0;
  double outer_radius_scale = 1.0;
  bool flip_critical_value = false;
  double strip_offset = 0.0; ///< in units of the strip width r_m * pi
  double alpha_offset = 0.0;
  bool perturb_rerun = false;
};

/// The corruption each check must detect.
inline Corruption designated_corruption(CheckId id) {
  Corruption c;
  switch (id) {
  case CheckId::FixedPoint:
  case CheckId::Multiplier:
  case CheckId::SchwarzContraction:
  case CheckId::TrapSoundness:
  case CheckId::DefiningResidual:
  case CheckId::TrapInvariance:
    c.epsilon0_scale = 1.5;
    break;
  case CheckId::LowerBound:
    c.epsilon0_scale = 0.5;
    break;
  case CheckId::HIntoTrap:
    c.half_width_scale = 1.5;
    break;
  case CheckId::WedgeLemma:
    c.half_width_scale = 0.0;
    break;
  case CheckId::SigmaIdentity:
  case CheckId::GammaIdentity:
    c.phase_offset = 1e-3;
    break;
  case CheckId::InnerDiskCapture:
    c.inner_radius_scale = 10.0;
    break;
  case CheckId::OuterBoundMargin:
    c.outer_radius_scale = 0.5;
    break;
  case CheckId::CriticalShift:
    c.flip_critical_value = true;
    break;
  case CheckId::C3StripCapture:
    c.strip_offset = 1.0;
    break;
  case CheckId::C2WedgeCapture:
    c.alpha_offset = 0.6;
    break;
  case CheckId::Determinism:
    c.perturb_rerun = true;
    break;
  }
  return c;
}

/// |lambda| log-spaced in [abs_min, abs_max] times `angular` arguments
/// -pi + 2pi (j + 1/2)/angular.
struct LambdaGrid {
  double abs_min = 0.05;
  double abs_max = 20.0;
  int radial = 5;
  int angular = 4;

  std::vector<double> magnitudes() const {
    std::vector<double> out;
    for (int i = 0; i < radial; ++i) {
      const double t = radial == 1 ? 0.0 : static_cast<double>(i) / (radial - 1);
      out.push_back(abs_min * std::pow(abs_max / abs_min, t));
    }
    return out;
  }

  std::vector<Complex> points() const {
    std::vector<Complex> out;
    for (double r : magnitudes())
      for (int j = 0; j < angular; ++j)
        out.push_back(std::polar(r, -std::numbers::pi + 2.0 * std::numbers::pi * (j + 0.5) / angular));
    return out;
  }

  void validate() const {
    if (!(abs_min > 0.0) || !(abs_max >= abs_min) || radial < 1 || angular < 1)
      throw std::invalid_argument("invalid lambda grid");
  }
};

struct SuiteConfig {
  std::vector<int> m_set{2, 3, 4, 5};
  LambdaGrid lambda_grid{};
  std::uint64_t seed = 1;
  Corruption corruption{};
  int threads = 0; ///< 0 = hardware concurrency

  void validate() const {
    if (m_set.empty())
      throw std::invalid_argument("m_set must not be empty");
    for (int m : m_set)
      if (m < 2)
        throw std::invalid_argument("every m in m_set must be >= 2");
    lambda_grid.validate();
  }
};

struct Entry {
  std::string id;
  std::string module;
  std::string statement;
  std::string parameters;
  long long samples = 0;
  long long violations = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  bool strict = false;
  bool pass = false;
};

struct VerificationReport {
  std::vector<Entry> entries;
  std::uint64_t seed = 0;
  std::vector<int> m_set;
  LambdaGrid lambda_grid;
  std::string started;
  std::string finished;

  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
  }
  const Entry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id)
        return &e;
    return nullptr;
  }
};

namespace detail {

/// Worst residual and violation count for one check.
class Accumulator {
public:
  explicit Accumulator(const CheckInfo& info) : info_(info) {}

  void add(double residual) {
    ++samples_;
    if (std::isnan(residual))
      residual = std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, residual);
    if (info_.strict ? !(residual < info_.tolerance) : !(residual <= info_.tolerance))
      ++violations_;
  }
  /// Boolean sample: failure counts as residual 1, success as 0.
  void add_ok(bool ok) { add(ok ? 0.0 : 1.0); }

  Entry finish(std::string parameters) const {
    Entry e;
    e.id = info_.key;
    e.module = info_.module;
    e.statement = info_.statement;
    e.parameters = std::move(parameters);
    e.samples = samples_;
    e.violations = violations_;
    e.worst_residual = samples_ > 0 ? worst_ : 0.0;
    e.tolerance = info_.tolerance;
    e.strict = info_.strict;
    e.pass = samples_ > 0 && violations_ == 0;
    return e;
  }

private:
  const CheckInfo& info_;
  long long samples_ = 0;
  long long violations_ = 0;
  double worst_ = -std::numeric_limits<double>::infinity();
};

inline std::mt19937_64 make_rng(std::uint64_t seed, CheckId id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), 0x5a17u};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform in the disk |z| < radius.
inline Complex in_disk(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

inline std::string describe(const SuiteConfig& cfg) {
  std::ostringstream os;
  os << "m={";
  for (std::size_t i = 0; i < cfg.m_set.size(); ++i)
    os << (i ? "," : "") << cfg.m_set[i];
  os << "}; |lambda| in [" << cfg.lambda_grid.abs_min << ", " << cfg.lambda_grid.abs_max << "] x"
     << cfg.lambda_grid.radial << " log, Arg x" << cfg.lambda_grid.angular;
  return os.str();
}

/// Arg F(z) in (-pi, pi]; subnormal or non-finite values carry no usable
/// phase, so those fall back to the log-polar form.
inline double arg_of_map(Complex z, const MapParams& p) {
  const Complex v = eval_map(z, p);
  if (is_finite(v) && std::isnormal(std::abs(v)))
    return std::arg(v);
  return wrap_angle(eval_map_polar(z, p).phase);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

inline constexpr int kContractionSamples = 10000;
inline constexpr int kCurveSamples = 1000;
inline constexpr int kParamSamples = 1000;

inline Entry check_fixed_point(const SuiteConfig& cfg, bool multiplier) {
  const auto& info = check_info(multiplier ? CheckId::Multiplier : CheckId::FixedPoint);
  Accumulator acc(info);
  std::vector<double> mags = cfg.lambda_grid.magnitudes();
  for (double extra : {0.5, 1.0, 2.0})
    mags.push_back(extra);
  for (int m : cfg.m_set)
    for (double lam : mags) {
      const MapParams p({lam, 0.0}, m);
      const double eps = solve_epsilon0(lam, m) * cfg.corruption.epsilon0_scale;
      if (multiplier)
        acc.add(std::abs(eval_derivative({eps, 0.0}, p) - Complex(m + eps, 0.0)));
      else
        acc.add(std::abs(eval_map({eps, 0.0}, p) - Complex(eps, 0.0)));
    }
  return acc.finish(describe(cfg) + "; lambda real = grid magnitudes and {0.5,1,2}");
}

inline Entry check_contraction(const SuiteConfig& cfg, CheckId id) {
  const auto& info = check_info(id);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, id);
  const double shrink = id == CheckId::SchwarzContraction ? (1.0 - 1e-12) : 1.0;
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const MapParams p(lam, m);
      const double eps = solve_epsilon0(p.abs_lambda(), m) * cfg.corruption.epsilon0_scale;
      for (int s = 0; s < kContractionSamples; ++s) {
        const Complex z = in_disk(rng, eps * shrink);
        acc.add(std::abs(eval_map(z, p)) - std::abs(z));
      }
    }
  return acc.finish(describe(cfg) + "; 10000 samples per (lambda, m)");
}

inline Entry check_trap_soundness(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::TrapSoundness);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::TrapSoundness);
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const MapParams p(lam, m);
      const RegionCertificates certs = make_certificates(p);
      IterationPolicy pol;
      pol.trap_radius = certs.epsilon0 * cfg.corruption.epsilon0_scale;
      for (int s = 0; s < 200; ++s) {
        Complex last{};
        const OrbitOutcome o =
            iterate_orbit(in_disk(rng, 3.0 * pol.trap_radius), p, pol, certs, [&](int, Complex z) { last = z; });
        if (!std::holds_alternative<EnteredTrap>(o))
          continue;
        double worst = -std::numeric_limits<double>::infinity();
        Complex z = last;
        for (int n = 0; n < 50 && z != Complex(0.0, 0.0); ++n) {
          const Complex next = eval_map(z, p);
          worst = std::max(worst, std::abs(next) - std::abs(z));
          z = next;
        }
        if (std::isfinite(worst))
          acc.add(worst);
      }
    }
  return acc.finish(describe(cfg) + "; 200 seeds in |z| < 3 eps0 per (lambda, m), 50 follow-up steps");
}

inline Entry check_determinism(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::Determinism);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::Determinism);
  IterationPolicy pol;
  pol.max_iter = 100;
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const MapParams p(lam, m);
      const RegionCertificates certs = make_certificates(p);
      for (int s = 0; s < 100; ++s) {
        const Complex seed{uniform(rng, -6.0, 6.0), uniform(rng, -6.0, 6.0)};
        Complex again = seed;
        if (cfg.corruption.perturb_rerun)
          again = {std::nextafter(seed.real(), 1e300), seed.imag()};
        Complex last_a{}, last_b{};
        const OrbitOutcome a = iterate_orbit(seed, p, pol, certs, [&](int, Complex z) { last_a = z; });
        const OrbitOutcome b = iterate_orbit(again, p, pol, certs, [&](int, Complex z) { last_b = z; });
        const bool same = a.index() == b.index() && outcome_step(a) == outcome_step(b) &&
                          std::memcmp(&last_a, &last_b, sizeof(Complex)) == 0;
        acc.add_ok(same);
      }
    }
  // Band/worker invariance of the renderer on a small grid.
  const GridSpec spec{-6.0, 6.0, -6.0, 6.0, 48, 48};
  const MapParams p({-2.1, 0.0}, cfg.m_set.front());
  const auto one = render_dynamical(spec, p, pol, {1, 1});
  const auto many = render_dynamical(spec, p, pol, {16, 4});
  acc.add_ok(one.cells == many.cells);
  return acc.finish(describe(cfg) + "; 100 seeds per (lambda, m) run twice, 48x48 render 1 vs 16 bands");
}

inline Entry check_defining_residual(const SuiteConfig& cfg, bool lower_bound) {
  const auto& info = check_info(lower_bound ? CheckId::LowerBound : CheckId::DefiningResidual);
  Accumulator acc(info);
  for (int m = 2; m <= 8; ++m)
    for (double lam : log_grid(1e-3, 1e3, 50)) {
      const double eps = solve_epsilon0(lam, m) * cfg.corruption.epsilon0_scale;
      if (lower_bound)
        acc.add(epsilon0_lower_bound(lam, m) - eps);
      else
        acc.add(std::abs(std::pow(eps, m - 1) * std::exp(eps) * lam - 1.0));
    }
  return acc.finish("|lambda| in [1e-3, 1e3] x50 log, m in 2..8");
}

inline Entry check_h_into_trap(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::HIntoTrap);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::HIntoTrap);
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const MapParams p(lam, m);
      const RegionCertificates certs = make_certificates(p);
      for (int s = 0; s < kContractionSamples; ++s) {
        const double x = uniform(rng, certs.x0 - 30.0, certs.x0);
        const double c = half_width(x, certs) * cfg.corruption.half_width_scale;
        const Complex z{x, uniform(rng, -1.0, 1.0) * c};
        acc.add(std::abs(eval_map(z, p)) - certs.epsilon0);
      }
    }
  return acc.finish(describe(cfg) + "; x in [x0 - 30, x0), |y| < C(x), 10000 per (lambda, m)");
}

inline Entry check_wedge_lemma(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::WedgeLemma);
  Accumulator acc(info);
  const double scale = cfg.corruption.half_width_scale;
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const RegionCertificates certs = make_certificates(std::abs(lam), m);
      auto inside = [&](Complex z) {
        return z.real() < certs.x0 && std::abs(z.imag()) < scale * half_width(z.real(), certs);
      };
      for (double amp : {0.5, 2.0})
        for (int power : {1, 2}) {
          auto point = [&](double x) { return Complex(x, amp * std::pow(std::abs(x), power)); };
          int found = -1;
          for (int j = 0; j < 5000 && found < 0; ++j)
            if (inside(point(certs.x0 - 1.0 - j)))
              found = j;
          bool ok = found >= 0;
          for (int t = 1; ok && t <= 100; ++t)
            ok = inside(point(certs.x0 - 1.0 - found - t));
          acc.add_ok(ok);
        }
    }
  return acc.finish(describe(cfg) + "; A in {0.5, 2}, k in {1, 2}, unit steps below x0 - 1");
}

inline Entry check_sigma_identity(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::SigmaIdentity);
  Accumulator acc(info);
  const Complex rot = std::polar(1.0, cfg.corruption.phase_offset);
  for (int m : cfg.m_set)
    for (Complex lam : cfg.lambda_grid.points()) {
      const MapParams p(lam, m);
      const MapParams drawn(lam * rot, m);
      for (int k = -6; k <= 6; ++k)
        for (Complex z : sigma_curve(k, drawn, kCurveSamples).points)
          acc.add(std::abs(wrap_angle(arg_of_map(z, p) - std::numbers::pi)));
    }
  return acc.finish(describe(cfg) + "; k in -6..6, 1000 alpha samples per curve");
}

inline Entry check_inner_disk(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::InnerDiskCapture);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::InnerDiskCapture);
  const IterationPolicy pol;
  for (int m : cfg.m_set) {
    const double radius = c0_bounds(m).inner_radius * cfg.corruption.inner_radius_scale;
    for (int s = 0; s < kParamSamples; ++s) {
      Complex lam = in_disk(rng, radius);
      if (lam == Complex(0.0, 0.0))
        lam = {radius * 0.5, 0.0};
      const ParamClass c = classify_parameter(lam, m, pol);
      const auto* cap = std::get_if<param::Captured>(&c);
      acc.add_ok(cap != nullptr && cap->first_trap_step <= 1);
    }
  }
  return acc.finish(describe(cfg) + "; 1000 lambda per m uniform in the inner disk");
}

inline Entry check_outer_margin(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::OuterBoundMargin);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::OuterBoundMargin);
  for (int m : cfg.m_set) {
    const double outer = c0_bounds(m).outer_radius * cfg.corruption.outer_radius_scale;
    for (int s = 0; s < kParamSamples; ++s) {
      const double r = outer * 1.01 * std::exp(uniform(rng, 0.0, std::log(10.0)));
      const Complex lam = std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi));
      acc.add(-polynomial_like_margin(lam, m, kDefaultMarginSamples));
    }
  }
  return acc.finish(describe(cfg) + "; 1000 lambda per m, |lambda| in 1.01..10.1 x outer, 4096 circle samples");
}

inline Entry check_critical_shift(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::CriticalShift);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::CriticalShift);
  const IterationPolicy pol;
  for (int m : cfg.m_set) {
    std::vector<Complex> lambdas = cfg.lambda_grid.points();
    for (int s = 0; s < 200; ++s)
      lambdas.push_back(std::polar(std::exp(uniform(rng, std::log(0.01), std::log(30.0))),
                                   uniform(rng, -std::numbers::pi, std::numbers::pi)));
    for (Complex lam : lambdas) {
      const MapParams p(lam, m);
      const RegionCertificates certs = make_certificates(p);
      const Complex value = critical_value(p) * (cfg.corruption.flip_critical_value ? -1.0 : 1.0);
      const OrbitOutcome from_point = iterate_orbit(critical_point(p), p, pol, certs);
      const OrbitOutcome from_value = iterate_orbit(value, p, pol, certs);
      if (outcome_step(from_point) == 0 && !std::holds_alternative<Undecided>(from_point))
        continue; // -m itself certified; no shift relation to test
      const int shifted = outcome_step(from_value) + 1;
      bool ok;
      if (std::holds_alternative<Undecided>(from_value) || shifted > pol.max_iter)
        ok = std::holds_alternative<Undecided>(from_point);
      else
        ok = from_point.index() == from_value.index() && outcome_step(from_point) == shifted;
      acc.add_ok(ok);
    }
  }
  return acc.finish(describe(cfg) + "; grid plus 200 random lambda per m, |lambda| in [0.01, 30]");
}

inline Entry check_gamma_identity(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::GammaIdentity);
  Accumulator acc(info);
  const Complex rot = std::polar(1.0, cfg.corruption.phase_offset);
  for (int m : cfg.m_set)
    for (int k = -6; k <= 6; ++k)
      for (Complex lam : gamma_curve(k, m, kCurveSamples).points) {
        const Complex used = lam * rot;
        const Complex w = critical_value(MapParams(used, m));
        const double lhs = std::arg(used) + m * std::arg(w) + w.imag();
        acc.add(std::abs(wrap_angle(lhs - (2.0 * k + 1.0) * std::numbers::pi)));
      }
  return acc.finish(describe(cfg) + "; k in -6..6, 1000 theta samples per curve");
}

/// Scans Re F(-m) outward from 1 to escape_re in steps of 0.5 for a mid-strip
/// Im(lambda); passes once 20 consecutive steps are Captured with step <= 3.
inline bool c3_scan_captures(int m, double strip_offset, const IterationPolicy& pol) {
  const double rm = r_const(m);
  const auto strip = c3_strip_bounds(0, m);
  const double im = 0.5 * (strip.lo + strip.hi) + strip_offset * rm * std::numbers::pi;
  const double dir = (m % 2 == 0) ? 1.0 : -1.0;
  int run = 0;
  for (double re_w = 1.0; re_w < pol.escape_re; re_w += 0.5) {
    const Complex lam{dir * re_w * rm, im};
    const ParamClass c = classify_parameter(lam, m, pol);
    const auto* cap = std::get_if<param::Captured>(&c);
    run = (cap && cap->first_trap_step <= 3) ? run + 1 : 0;
    if (run >= 20)
      return true;
  }
  return false;
}

inline Entry check_c3_strip(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::C3StripCapture);
  Accumulator acc(info);
  const IterationPolicy pol;
  for (int m : cfg.m_set)
    acc.add_ok(c3_scan_captures(m, cfg.corruption.strip_offset, pol));
  return acc.finish(describe(cfg) + "; k = 0, Re F(-m) scanned from 1 to escape_re in steps of 0.5");
}

inline Entry check_c2_wedge(const SuiteConfig& cfg) {
  const auto& info = check_info(CheckId::C2WedgeCapture);
  Accumulator acc(info);
  auto rng = make_rng(cfg.seed, CheckId::C2WedgeCapture);
  const IterationPolicy pol;
  for (int m : cfg.m_set) {
    const C2Geometry geo = make_c2_geometry(m);
    for (int s = 0; s < 300; ++s) {
      const double r = geo.d0 * 1.01 * std::exp(uniform(rng, 0.0, std::log(20.0)));
      const double alpha = geo.alpha(r) + 0.01 - cfg.corruption.alpha_offset;
      // |Arg| in (alpha, pi] for m even, [0, pi - alpha) for m odd.
      const double mag_arg = (m % 2 == 0) ? uniform(rng, alpha, std::numbers::pi)
                                          : uniform(rng, 0.0, std::numbers::pi - alpha);
      const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      const Complex lam = std::polar(r, sign * mag_arg);
      const ParamClass c = classify_parameter(lam, m, pol);
      const auto* cap = std::get_if<param::Captured>(&c);
      acc.add_ok(c2_certificate(lam, m) && cap != nullptr && cap->first_trap_step <= 2);
    }
  }
  return acc.finish(describe(cfg) + "; 300 lambda per m, |lambda| in 1.01..20.2 x D0");
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

} // namespace detail

inline Entry run_check(CheckId id, const SuiteConfig& cfg) {
  cfg.validate();
  using namespace detail;
  switch (id) {
  case CheckId::FixedPoint:
    return check_fixed_point(cfg, false);
  case CheckId::Multiplier:
    return check_fixed_point(cfg, true);
  case CheckId::SchwarzContraction:
  case CheckId::TrapInvariance:
    return check_contraction(cfg, id);
  case CheckId::TrapSoundness:
    return check_trap_soundness(cfg);
  case CheckId::Determinism:
    return check_determinism(cfg);
  case CheckId::DefiningResidual:
    return check_defining_residual(cfg, false);
  case CheckId::LowerBound:
    return check_defining_residual(cfg, true);
  case CheckId::HIntoTrap:
    return check_h_into_trap(cfg);
  case CheckId::WedgeLemma:
    return check_wedge_lemma(cfg);
  case CheckId::SigmaIdentity:
    return check_sigma_identity(cfg);
  case CheckId::InnerDiskCapture:
    return check_inner_disk(cfg);
  case CheckId::OuterBoundMargin:
    return check_outer_margin(cfg);
  case CheckId::CriticalShift:
    return check_critical_shift(cfg);
  case CheckId::GammaIdentity:
    return check_gamma_identity(cfg);
  case CheckId::C3StripCapture:
    return check_c3_strip(cfg);
  case CheckId::C2WedgeCapture:
    return check_c2_wedge(cfg);
  }
  throw std::invalid_argument("unknown check id");
}

/// Runs every check, in parallel batches, and assembles the report in id order.
inline VerificationReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  report.seed = cfg.seed;
  report.m_set = cfg.m_set;
  report.lambda_grid = cfg.lambda_grid;
  report.started = detail::utc_now();

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, kCheckCount);
  report.entries.resize(kCheckCount);
  for (int base = 0; base < kCheckCount; base += threads) {
    std::vector<std::future<Entry>> batch;
    const int end = std::min(kCheckCount, base + threads);
    for (int i = base; i < end; ++i)
      batch.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async,
                                 [&cfg, i] { return run_check(static_cast<CheckId>(i), cfg); }));
    for (int i = base; i < end; ++i)
      report.entries[static_cast<std::size_t>(i)] = batch[static_cast<std::size_t>(i - base)].get();
  }
  report.finished = detail::utc_now();
  return report;
}

/// Timestamps are left out unless asked for, so a fixed seed gives identical bytes.
inline Json to_json(const VerificationReport& r, bool include_timestamps = false) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"id", e.id},
                           {"module", e.module},
                           {"statement", e.statement},
                           {"parameters", e.parameters},
                           {"samples", e.samples},
                           {"violations", e.violations},
                           {"worst_residual", e.worst_residual},
                           {"tolerance", e.tolerance},
                           {"comparison", e.strict ? "<" : "<="},
                           {"pass", e.pass}});
  Json j{{"seed", r.seed},
         {"m_set", r.m_set},
         {"lambda_grid",
          Json{{"abs_min", r.lambda_grid.abs_min},
               {"abs_max", r.lambda_grid.abs_max},
               {"radial", r.lambda_grid.radial},
               {"angular", r.lambda_grid.angular}}}};
  if (include_timestamps) {
    j["started"] = r.started;
    j["finished"] = r.finished;
  }
  j["entries"] = std::move(entries);
  j["all_pass"] = r.all_pass();
  return j;
}

} // namespace zmexp::verify
