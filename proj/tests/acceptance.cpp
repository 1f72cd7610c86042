// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zmexp/zmexp.hpp"

using namespace zmexp;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("[%s] %2d  %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Plain bisection on x e^x = 1 in long double.
double omega_oracle() {
  long double lo = 0.0L, hi = 1.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (mid * std::exp(mid) < 1.0L ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

verify::Entry harness_entry(verify::CheckId id, const verify::Corruption& c = {}) {
  verify::SuiteConfig cfg;
  cfg.seed = 2024;
  cfg.corruption = c;
  return verify::run_check(id, cfg);
}

std::string entry_detail(const verify::Entry& e) {
  std::ostringstream os;
  os << e.violations << "/" << e.samples << " violations, worst residual " << e.worst_residual
     << (e.strict ? " (< " : " (<= ") << e.tolerance << ")";
  return os.str();
}

void criterion1() {
  const double a = solve_epsilon0(1.0 / kE, 2);
  const double oracle = omega_oracle();
  const double b = solve_epsilon0(1.0, 2);

  std::vector<double> lams;
  for (int i = 0; i < 200; ++i)
    lams.push_back(1e-3 * std::pow(1e6, i / 199.0));
  double worst_mean_us = 0.0;
  double sink = 0.0;
  for (int batch = 0; batch < 5; ++batch) {
    const auto t0 = Clock::now();
    for (int m = 2; m <= 6; ++m)
      for (double lam : lams)
        sink += solve_epsilon0(lam, m);
    const double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / (5 * lams.size());
    worst_mean_us = std::max(worst_mean_us, us);
  }
  const bool pass = std::abs(a - 1.0) <= 1e-12 && std::abs(b - oracle) <= 1e-9 && std::abs(b - 0.5671432904) < 1e-9 &&
                    worst_mean_us < 1000.0 && sink > 0.0;
  report(1, pass, "epsilon0 solver",
         fmt("eps0(1/e,2)-1 = %.2e, eps0(1,2) = %.13f (oracle %.13f), %.2f us per solve", a - 1.0, b, oracle,
             worst_mean_us));
}

void criterion2() {
  double worst = -INFINITY;
  int violations = 0;
  for (int m = 2; m <= 8; ++m)
    for (int i = 0; i < 50; ++i) {
      const double lam = 1e-3 * std::pow(1e6, i / 49.0);
      const double gap = epsilon0_lower_bound(lam, m) - solve_epsilon0(lam, m);
      worst = std::max(worst, gap);
      violations += gap > 1e-12;
    }
  report(2, violations == 0, "epsilon0 lower bound on 50x7 grid",
         fmt("%.0f violations, max(bound - eps0) = %.3e", violations, worst));
}

void criterion3() {
  const auto e = harness_entry(verify::CheckId::TrapInvariance);
  report(3, e.pass, "trap invariance, 10^4 samples x 20 lambda x m in {2..5}", entry_detail(e));
}

void criterion4() {
  const auto e = harness_entry(verify::CheckId::HIntoTrap);
  report(4, e.pass, "F(H) inside the trap disk", entry_detail(e));
}

// Point of sigma_k with Re z = X, for lambda with Arg = arg_lambda.
Complex sigma_at_re(int k, int m, double arg_lambda, double X) {
  const double c = (2 * k + 1) * kPi - arg_lambda;
  const double sign = c > 0 ? 1.0 : -1.0;
  // Along the far branch alpha -> 0 with sign(alpha) = sign(c); Re z decreases in |alpha|.
  auto re = [&](double a) { return (c - m * a) * std::cos(a) / std::sin(a); };
  double lo = sign * 1e-12, hi = sign * std::min(1.0, 0.5 * std::abs(c) / m);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (re(mid) > X ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  const double r = (c - m * a) / std::sin(a);
  return std::polar(r, a);
}

void criterion5() {
  const auto e = harness_entry(verify::CheckId::SigmaIdentity);
  double worst = 0.0;
  int worst_k = 0;
  for (int k = -6; k <= 6; ++k) {
    const Complex z = sigma_at_re(k, 2, 0.0, 100.0);
    const double err = std::abs(z.imag() - (2 * k + 1) * kPi);
    if (err > worst) {
      worst = err;
      worst_k = k;
    }
  }
  const double err_k0 = std::abs(sigma_at_re(0, 2, 0.0, 100.0).imag() - kPi);
  report(5, e.pass && worst < 0.05, "sigma_k identity and asymptote at Re z = 100",
         entry_detail(e) + fmt("; asymptote error (lambda=1, m=2): k=0 %.4f, worst %.4f at k=%.0f (limit 0.05)",
                               err_k0, worst, worst_k));
}

void criterion6() {
  double fp = 0.0, mult = 0.0;
  for (double lam : {0.5, 1.0, 2.0})
    for (int m : {2, 3}) {
      const MapParams p({lam, 0.0}, m);
      const double eps = solve_epsilon0(lam, m);
      fp = std::max(fp, std::abs(eval_map({eps, 0.0}, p) - Complex(eps, 0.0)));
      mult = std::max(mult, std::abs(eval_derivative({eps, 0.0}, p) - Complex(m + eps, 0.0)));
    }
  report(6, fp < 1e-9 && mult < 1e-8, "fixed point and multiplier",
         fmt("max |F(eps0)-eps0| = %.2e, max |F'(eps0)-(m+eps0)| = %.2e", fp, mult));
}

void criterion7() {
  const auto e = harness_entry(verify::CheckId::InnerDiskCapture);
  report(7, e.pass, "inner disk captured with first_trap_step <= 1", entry_detail(e));
}

void criterion8() {
  const auto e = harness_entry(verify::CheckId::OuterBoundMargin);
  const double min_abs = polynomial_like_margin({3.0, 0.0}, 2) + 1.0;
  report(8, e.pass && std::abs(min_abs - 3.0 / kE) < 1e-6, "polynomial-like margin",
         entry_detail(e) + fmt("; m=2 lambda=3: min|F| = %.8f vs 3/e = %.8f", min_abs, 3.0 / kE));
}

void criterion9() {
  const auto e = harness_entry(verify::CheckId::GammaIdentity);
  const auto curve = gamma_curve(1, 3, 20001);
  Complex at{};
  double best = INFINITY;
  for (Complex lam : curve.points)
    if (std::abs(lam.imag()) < best) {
      best = std::abs(lam.imag());
      at = lam;
    }
  const double target = 4.0 * std::pow(kE / 3.0, 3);
  report(9, e.pass && std::abs(at.real() - target) < 1e-6, "Gamma_k identity and m=3 real crossing",
         entry_detail(e) + fmt("; crossing %.8f vs 4(e/3)^3 = %.8f", at.real(), target));
}

// Lengths of maximal Basin0 runs fully inside the sampled segment.
std::vector<double> complete_runs(const std::vector<bool>& in, double step) {
  std::vector<double> runs;
  std::size_t i = 0;
  while (i < in.size() && in[i])
    ++i; // a run touching the start is truncated
  while (i < in.size()) {
    while (i < in.size() && !in[i])
      ++i;
    const std::size_t start = i;
    while (i < in.size() && in[i])
      ++i;
    if (i < in.size() && i > start)
      runs.push_back(static_cast<double>(i - start) * step);
  }
  return runs;
}

void criterion10() {
  const MapParams p({1.0, 0.0}, 2);
  const auto certs = make_certificates(p);
  const IterationPolicy pol;
  const int n = 4000;
  const double step = 20.0 * kPi / n;
  std::vector<bool> basin(n);
  for (int i = 0; i < n; ++i)
    basin[i] = classify_dynamical_point({30.0, (i + 0.5) * step}, p, pol, certs) == Verdict::Basin0;
  const auto runs = complete_runs(basin, step);
  bool pass = runs.size() >= 4;
  std::ostringstream os;
  os << runs.size() << " complete runs, deviation from pi:";
  for (double r : runs)
    os << " " << std::showpos << std::fixed << std::setprecision(1) << 100.0 * (r / kPi - 1.0) << "%";
  // Convergence: the later half of the runs lies within 5%, and the deviation does not grow.
  for (std::size_t i = runs.size() / 2; i < runs.size(); ++i)
    pass = pass && std::abs(runs[i] / kPi - 1.0) <= 0.05;
  if (!runs.empty())
    pass = pass && std::abs(runs.back() / kPi - 1.0) <= std::abs(runs.front() / kPi - 1.0);
  report(10, pass, "dynamical strip width along Re z = 30 (lambda=1, m=2)", os.str());
}

void criterion11() {
  const int m = 2;
  const double rm = r_const(m);
  const auto strip = c3_strip_bounds(0, m);
  const double mid = 0.5 * (strip.lo + strip.hi);
  const IterationPolicy pol;
  const int n = 4000;
  const double lo = mid - 2.0 * rm * kPi, hi = mid + 2.0 * rm * kPi;
  const double step = (hi - lo) / n;
  auto captured = [&](double im) {
    return std::holds_alternative<param::Captured>(classify_parameter({40.0, im}, m, pol));
  };
  const int centre = static_cast<int>((mid - lo) / step);
  int a = centre, b = centre;
  const bool centre_ok = captured(lo + (centre + 0.5) * step);
  while (centre_ok && a > 0 && captured(lo + (a - 0.5) * step))
    --a;
  while (centre_ok && b < n - 1 && captured(lo + (b + 1.5) * step))
    ++b;
  const double width = centre_ok ? (b - a + 1) * step : 0.0;
  const double rel = width / (rm * kPi) - 1.0;
  report(11, centre_ok && std::abs(rel) <= 0.05, "parameter strip width along Re lambda = 40 (m=2, k=0)",
         fmt("captured width %.4f vs r_2 pi = %.4f (%+.1f%%)", width, rm * kPi, 100.0 * rel));
}

void criterion12() {
  const GridSpec spec{-10.0, 10.0, -10.0, 10.0, 1024, 1024};
  const MapParams p({-2.1, 0.0}, 2);
  IterationPolicy pol;
  pol.max_iter = 200;
  const int cores = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int workers = std::min(cores, 4);
  std::vector<std::uint8_t> first;
  bool identical = true;
  double worst = 0.0;
  std::ostringstream os;
  for (int tiles : {1, 4, 16}) {
    const auto t0 = Clock::now();
    const auto bytes = encode_ppm(colorize(render_dynamical(spec, p, pol, {tiles, workers})));
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    worst = std::max(worst, secs);
    if (first.empty())
      first = bytes;
    identical = identical && bytes == first;
    os << tiles << " tiles " << std::fixed << std::setprecision(3) << secs << " s; ";
  }
  os << (identical ? "byte-identical" : "DIFFERENT") << ", " << workers << " worker(s) on " << cores
     << " available core(s)";
  report(12, identical && worst < 10.0, "1024^2 render determinism and time", os.str());
}

void criterion13() {
  verify::Corruption c;
  c.epsilon0_scale = 1.5;
  const auto clean = harness_entry(verify::CheckId::TrapInvariance);
  const auto bad = harness_entry(verify::CheckId::TrapInvariance, c);
  report(13, clean.pass && !bad.pass, "negative control: eps0 x 1.5 breaks trap invariance",
         "clean: " + entry_detail(clean) + "; corrupted: " + entry_detail(bad));
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
