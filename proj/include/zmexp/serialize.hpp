#pragma once
/**
 * \file serialize.hpp
 * \brief JSON and CSV exports: certificates, curves, zone geometry and the
 * provenance sidecar written next to rendered images.
 */

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curves.hpp"
#include "dynamics.hpp"
#include "parameter.hpp"
#include "regions.hpp"
#include "render.hpp"

namespace zmexp {

using Json = nlohmann::ordered_json;

inline Json to_json(const RegionCertificates& c) {
  return Json{{"abs_lambda", c.abs_lambda}, {"m", c.m},   {"epsilon0", c.epsilon0},
              {"x0", c.x0},                 {"tol", c.tol}};
}

inline RegionCertificates certificates_from_json(const Json& j) {
  RegionCertificates c;
  c.abs_lambda = j.at("abs_lambda").get<double>();
  c.m = j.at("m").get<int>();
  c.epsilon0 = j.at("epsilon0").get<double>();
  c.x0 = j.at("x0").get<double>();
  c.tol = j.at("tol").get<double>();
  return c;
}

inline const char* curve_kind_name(CurveKind k) {
  return k == CurveKind::SigmaDynamical ? "sigma" : "gamma";
}

/// Name of the angle column: alpha for sigma_k, theta for Gamma_k.
inline const char* curve_param_name(CurveKind k) {
  return k == CurveKind::SigmaDynamical ? "alpha" : "theta";
}

inline Json to_json(const CurvePolyline& c) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i)
    pts.push_back(Json::array({c.params[i], c.points[i].real(), c.points[i].imag()}));
  return Json{{"kind", curve_kind_name(c.kind)},
              {"k", c.k},
              {"param_range", Json::array({c.param_lo, c.param_hi})},
              {"columns", Json::array({curve_param_name(c.kind), "re", "im"})},
              {"points", std::move(pts)}};
}

/// CSV with header "k,<alpha|theta>,re,im"; all curves share one header.
inline void write_curves_csv(std::ostream& os, const std::vector<CurvePolyline>& curves) {
  const CurveKind kind = curves.empty() ? CurveKind::SigmaDynamical : curves.front().kind;
  os << "k," << curve_param_name(kind) << ",re,im\n";
  os << std::setprecision(17);
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.points.size(); ++i)
      os << c.k << ',' << c.params[i] << ',' << c.points[i].real() << ',' << c.points[i].imag() << '\n';
}

inline Json to_json(const GridSpec& g) {
  return Json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
              {"y_max", g.y_max}, {"width", g.width}, {"height", g.height}};
}

inline Json to_json(const IterationPolicy& p) {
  return Json{{"max_iter", p.max_iter},
              {"escape_re", p.escape_re},
              {"overflow_re", p.overflow_re},
              {"trap_radius", p.trap_radius}};
}

inline Json to_json(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }

inline Json to_json(const Palette& p) {
  return Json{{"basin", to_json(p.basin)},
              {"escaping", to_json(p.escaping)},
              {"bounded", to_json(p.bounded)},
              {"modulate_steps", p.modulate_steps}};
}

struct ZoneGeometry {
  int m = 2;
  DiskBounds c0{};
  double d0 = 0.0;
  std::vector<CurvePolyline> gamma_curves;
  std::vector<std::pair<int, ImInterval>> c3_strips;
};

inline ZoneGeometry make_zone_geometry(int m, int k_lo, int k_hi, int theta_samples) {
  ZoneGeometry z;
  z.m = m;
  z.c0 = c0_bounds(m);
  z.d0 = solve_d0(m);
  for (int k = k_lo; k <= k_hi; ++k) {
    z.gamma_curves.push_back(gamma_curve(k, m, theta_samples));
    z.c3_strips.emplace_back(k, c3_strip_bounds(k, m));
  }
  return z;
}

inline Json to_json(const ZoneGeometry& z) {
  Json curves = Json::array();
  for (const auto& c : z.gamma_curves)
    curves.push_back(to_json(c));
  Json strips = Json::array();
  for (const auto& [k, iv] : z.c3_strips)
    strips.push_back(Json{{"k", k}, {"lo", iv.lo}, {"hi", iv.hi}});
  return Json{{"m", z.m},
              {"inner_radius", z.c0.inner_radius},
              {"outer_radius", z.c0.outer_radius},
              {"D0", z.d0},
              {"gamma_curves", std::move(curves)},
              {"c3_strips", std::move(strips)}};
}

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+")
     << std::abs(z.imag()) << "i";
  return os.str();
}

/// Provenance sidecar for a rendered image.
inline Json render_sidecar(const std::string& plane, const GridSpec& spec, const IterationPolicy& pol,
                           const Palette& palette, int m, const Complex* lambda) {
  Json j{{"plane", plane}, {"m", m}};
  if (lambda)
    j["lambda"] = format_complex(*lambda);
  j["grid"] = to_json(spec);
  j["policy"] = to_json(pol);
  j["palette"] = to_json(palette);
  return j;
}

} // namespace zmexp
