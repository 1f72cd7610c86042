#pragma once
/**
 * \file cli.hpp
 * \brief Command-line surface: flag parsing into a JobConfig, the inverse
 * serialisation back to flags, and dispatch to the renderer, the geometry
 * exports and the verification suite.
 *
 * Exit codes: 0 success, 1 failed checks or runtime failure, 2 invalid usage.
 */

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curves.hpp"
#include "dynamics.hpp"
#include "image.hpp"
#include "map.hpp"
#include "parameter.hpp"
#include "regions.hpp"
#include "render.hpp"
#include "serialize.hpp"
#include "verify.hpp"

namespace zmexp::cli {

enum class Command { Julia, Param, Curves, Regions, Verify };

inline const char* command_name(Command c) {
  switch (c) {
  case Command::Julia:
    return "julia";
  case Command::Param:
    return "param";
  case Command::Curves:
    return "curves";
  case Command::Regions:
    return "regions";
  case Command::Verify:
    return "verify";
  }
  return "?";
}

/// Raised for anything that should exit with status 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Window {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  friend bool operator==(const Window&, const Window&) = default;
};

struct JobConfig {
  Command command = Command::Julia;
  std::vector<int> m{2};
  std::optional<Complex> lambda;
  std::optional<double> abs_lambda;
  std::optional<Window> window; ///< unset: the default range of the command
  int width = 512;
  int height = 512;
  std::optional<int> max_iter;
  std::optional<double> escape_re;
  std::optional<std::string> out; ///< unset: stdout (text outputs only)
  ImageFormat format = ImageFormat::PPM;
  int k_lo = -3;
  int k_hi = 3;
  int samples = 400;
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<int> threads;
  std::optional<std::string> corrupt; ///< verify: apply a check's designated corruption
  std::optional<verify::LambdaGrid> lambda_grid;
  bool timestamps = false;

  friend bool operator==(const JobConfig& a, const JobConfig& b) {
    auto grid_eq = [](const std::optional<verify::LambdaGrid>& x, const std::optional<verify::LambdaGrid>& y) {
      if (x.has_value() != y.has_value())
        return false;
      return !x || (x->abs_min == y->abs_min && x->abs_max == y->abs_max && x->radial == y->radial &&
                    x->angular == y->angular);
    };
    return a.command == b.command && a.m == b.m && a.lambda == b.lambda && a.abs_lambda == b.abs_lambda &&
           a.window == b.window && a.width == b.width && a.height == b.height && a.max_iter == b.max_iter &&
           a.escape_re == b.escape_re && a.out == b.out && a.format == b.format && a.k_lo == b.k_lo &&
           a.k_hi == b.k_hi && a.samples == b.samples && a.json == b.json && a.seed == b.seed &&
           a.threads == b.threads && a.corrupt == b.corrupt && grid_eq(a.lambda_grid, b.lambda_grid) &&
           a.timestamps == b.timestamps;
  }
};

// ---------------------------------------------------------------- value parsing

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos)
    return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline double parse_double(const std::string& text, const char* what) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(std::string("invalid number for ") + what + ": '" + text + "'");
  return v;
}

inline long long parse_integer(const std::string& text, const char* what) {
  const std::string s = trim(text);
  long long v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(std::string("invalid integer for ") + what + ": '" + text + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Accepts a, bi, a+bi, a-bi, i, -i, with scientific notation in either part.
inline Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ')
      s += c;
  if (s.empty())
    throw UsageError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j')
    return {parse_double(s, "complex real part"), 0.0};
  s.pop_back();
  // The split is the last sign that is not the sign of an exponent.
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+")
    im = "1";
  else if (im == "-")
    im = "-1";
  return {re.empty() ? 0.0 : parse_double(re, "complex real part"), parse_double(im, "complex imaginary part")};
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Window parse_window(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4)
    throw UsageError("--window expects x0,x1,y0,y1");
  Window w{parse_double(parts[0], "--window"), parse_double(parts[1], "--window"),
           parse_double(parts[2], "--window"), parse_double(parts[3], "--window")};
  if (!(w.x0 < w.x1) || !(w.y0 < w.y1))
    throw UsageError("--window needs x0 < x1 and y0 < y1");
  return w;
}

inline std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos)
    throw UsageError("--size expects WxH");
  const long long w = parse_integer(s.substr(0, x), "--size");
  const long long h = parse_integer(s.substr(x + 1), "--size");
  if (w < 1 || h < 1 || w > 1 << 16 || h > 1 << 16)
    throw UsageError("--size dimensions must be in 1..65536");
  return {static_cast<int>(w), static_cast<int>(h)};
}

inline std::vector<int> parse_m_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    const long long m = parse_integer(part, "--m");
    if (m < 2 || m > 64)
      throw UsageError("--m values must be in 2..64");
    out.push_back(static_cast<int>(m));
  }
  return out;
}

inline std::pair<int, int> parse_k_range(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2)
    throw UsageError("--k-range expects lo,hi");
  const long long lo = parse_integer(parts[0], "--k-range");
  const long long hi = parse_integer(parts[1], "--k-range");
  if (lo > hi || lo < -10000 || hi > 10000)
    throw UsageError("--k-range needs lo <= hi within +-10000");
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

inline verify::LambdaGrid parse_lambda_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4)
    throw UsageError("--lambda-grid expects min,max,radial,angular");
  verify::LambdaGrid g;
  g.abs_min = parse_double(parts[0], "--lambda-grid");
  g.abs_max = parse_double(parts[1], "--lambda-grid");
  g.radial = static_cast<int>(parse_integer(parts[2], "--lambda-grid"));
  g.angular = static_cast<int>(parse_integer(parts[3], "--lambda-grid"));
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return g;
}

inline std::optional<verify::CheckId> find_check(const std::string& key) {
  for (const auto& c : verify::all_checks())
    if (key == c.key)
      return c.id;
  return std::nullopt;
}

// ---------------------------------------------------------------- flags <-> JobConfig

/// Flags that re-parse to an identical JobConfig. Only fields used by the
/// command are emitted.
inline std::vector<std::string> to_args(const JobConfig& job) {
  std::vector<std::string> a{command_name(job.command)};
  auto flag = [&](const std::string& name, const std::string& value) { a.push_back("--" + name + "=" + value); };

  std::string ms;
  for (std::size_t i = 0; i < job.m.size(); ++i)
    ms += (i ? "," : "") + std::to_string(job.m[i]);
  flag("m", ms);

  const Command c = job.command;
  const bool image = c == Command::Julia || c == Command::Param;
  if (job.lambda && c != Command::Param && c != Command::Verify)
    flag("lambda", format_complex(*job.lambda));
  if (job.abs_lambda && c == Command::Regions)
    flag("abs-lambda", format_double(*job.abs_lambda));
  if (image) {
    if (job.window)
      flag("window", format_double(job.window->x0) + "," + format_double(job.window->x1) + "," +
                         format_double(job.window->y0) + "," + format_double(job.window->y1));
    flag("size", std::to_string(job.width) + "x" + std::to_string(job.height));
    if (job.max_iter)
      flag("max-iter", std::to_string(*job.max_iter));
    if (job.escape_re)
      flag("escape-re", format_double(*job.escape_re));
    flag("format", to_string(job.format));
  }
  if (c == Command::Curves || c == Command::Regions) {
    flag("k-range", std::to_string(job.k_lo) + "," + std::to_string(job.k_hi));
    flag("samples", std::to_string(job.samples));
  }
  if (job.out)
    flag("out", *job.out);
  if (job.json && c != Command::Verify)
    a.push_back("--json");
  if (job.threads && (image || c == Command::Verify))
    flag("threads", std::to_string(*job.threads));
  if (c == Command::Verify) {
    flag("seed", std::to_string(job.seed));
    if (job.corrupt)
      flag("corrupt", *job.corrupt);
    if (job.lambda_grid)
      flag("lambda-grid", format_double(job.lambda_grid->abs_min) + "," + format_double(job.lambda_grid->abs_max) +
                              "," + std::to_string(job.lambda_grid->radial) + "," +
                              std::to_string(job.lambda_grid->angular));
    if (job.timestamps)
      a.push_back("--timestamps");
  }
  return a;
}

namespace detail {

/// Raw flag text bound to CLI11 before conversion.
struct RawFlags {
  std::string m, lambda, abs_lambda, window, size, format = "ppm", k_range, lambda_grid, corrupt, out;
  int max_iter = 0, samples = 400, threads = 0;
  double escape_re = 0.0;
  std::uint64_t seed = 1;
  bool json = false, timestamps = false;
};

struct Parser {
  CLI::App app{"Dynamics and parameter planes of F(z) = lambda z^m e^z (m >= 2)", "zmexp"};
  RawFlags raw;
  std::string job_file;
  CLI::App* julia = nullptr;
  CLI::App* param = nullptr;
  CLI::App* curves = nullptr;
  CLI::App* regions = nullptr;
  CLI::App* verify = nullptr;

  Parser() {
    app.require_subcommand(0, 1);
    app.add_option("--job", job_file, "Flat JSON job file: {\"command\": ..., \"<flag>\": value, ...}")
        ->check(CLI::ExistingFile);

    julia = app.add_subcommand("julia", "Render the dynamical plane of F for one lambda");
    param = app.add_subcommand("param", "Render the parameter plane (fate of the critical point -m)");
    curves = app.add_subcommand("curves", "Export Gamma_k, or sigma_k when --lambda is given");
    regions = app.add_subcommand("regions", "Export the certified regions and the zone geometry");
    verify = app.add_subcommand("verify", "Run the numerical verification suite and print a JSON report");

    for (CLI::App* sc : {julia, param, curves, regions, verify})
      sc->add_option("--m", raw.m,
                     sc == verify ? "Comma-separated exponents, each >= 2 (default 2,3,4,5)"
                                  : "Exponent m >= 2 (default 2)");
    julia->add_option("--lambda", raw.lambda, "Parameter as a+bi, a-bi, a or bi")->required();
    curves->add_option("--lambda", raw.lambda, "Emit sigma_k of this lambda instead of Gamma_k");
    regions->add_option("--lambda", raw.lambda, "Parameter; only its modulus is used");
    regions->add_option("--abs-lambda", raw.abs_lambda, "|lambda| for the certificates");

    for (CLI::App* sc : {julia, param}) {
      sc->add_option("--window", raw.window, "Plane window x0,x1,y0,y1 (default depends on command and m)");
      sc->add_option("--size", raw.size, "Raster size WxH (default 512x512)");
      sc->add_option("--max-iter", raw.max_iter, "Iteration budget per pixel (default 200)");
      sc->add_option("--escape-re", raw.escape_re, "Escape when Re z exceeds this (default 50)");
      sc->add_option("--format", raw.format, "Image format: ppm or png (default ppm)");
      sc->add_option("--out", raw.out, "Output image path")->required();
      sc->add_flag("--json", raw.json, "Also write a provenance sidecar <out>.json");
      sc->add_option("--threads", raw.threads, "Worker threads (default: ZMEXP_THREADS or all cores)");
    }
    for (CLI::App* sc : {curves, regions}) {
      sc->add_option("--k-range", raw.k_range, "Curve/strip indices lo,hi (default -3,3)");
      sc->add_option("--samples", raw.samples, "Samples per curve (default 400)");
      sc->add_option("--out", raw.out, "Output path (default stdout)");
    }
    curves->add_flag("--json", raw.json, "JSON instead of CSV");
    regions->add_flag("--json", raw.json, "JSON instead of plain text");

    verify->add_option("--seed", raw.seed, "Random seed (default 1)");
    verify->add_option("--threads", raw.threads, "Checks run concurrently (default: ZMEXP_THREADS or all cores)");
    verify->add_option("--lambda-grid", raw.lambda_grid,
                       "|lambda| grid min,max,radial,angular (default 0.05,20,5,4)");
    verify->add_option("--corrupt", raw.corrupt, "Apply the designated corruption of this check id");
    verify->add_flag("--timestamps", raw.timestamps, "Include start/finish timestamps in the report");
    verify->add_option("--out", raw.out, "Report path (default stdout)");
  }

  JobConfig build() const {
    JobConfig job;
    const CLI::App* sc = nullptr;
    for (const auto& [c, app_ptr] : {std::pair{Command::Julia, julia}, std::pair{Command::Param, param},
                                     std::pair{Command::Curves, curves}, std::pair{Command::Regions, regions},
                                     std::pair{Command::Verify, verify}})
      if (app_ptr->parsed()) {
        job.command = c;
        sc = app_ptr;
      }
    if (!sc)
      throw UsageError("a command is required: julia, param, curves, regions or verify");
    auto given = [&](const char* name) { return sc->get_option_no_throw(name) != nullptr && sc->count(name) > 0; };

    if (given("--m"))
      job.m = parse_m_list(raw.m);
    else if (job.command == Command::Verify)
      job.m = {2, 3, 4, 5};
    if (job.command != Command::Verify && job.m.size() != 1)
      throw UsageError(std::string(command_name(job.command)) + " takes a single --m");

    if (job.command != Command::Param && given("--lambda")) {
      job.lambda = parse_complex(raw.lambda);
      if (*job.lambda == Complex(0.0, 0.0) || !is_finite(*job.lambda))
        throw UsageError("--lambda must be finite and nonzero");
    }
    if (job.command == Command::Regions && given("--abs-lambda")) {
      job.abs_lambda = parse_double(raw.abs_lambda, "--abs-lambda");
      if (!(*job.abs_lambda > 0.0) || !std::isfinite(*job.abs_lambda))
        throw UsageError("--abs-lambda must be positive and finite");
    }

    if (job.command == Command::Julia || job.command == Command::Param) {
      if (given("--window"))
        job.window = parse_window(raw.window);
      if (given("--size"))
        std::tie(job.width, job.height) = parse_size(raw.size);
      if (given("--max-iter")) {
        if (raw.max_iter < 1)
          throw UsageError("--max-iter must be >= 1");
        job.max_iter = raw.max_iter;
      }
      if (given("--escape-re")) {
        if (!std::isfinite(raw.escape_re))
          throw UsageError("--escape-re must be finite");
        job.escape_re = raw.escape_re;
      }
      try {
        job.format = parse_image_format(raw.format);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (job.command == Command::Curves || job.command == Command::Regions) {
      if (given("--k-range"))
        std::tie(job.k_lo, job.k_hi) = parse_k_range(raw.k_range);
      if (raw.samples < 2)
        throw UsageError("--samples must be >= 2");
      job.samples = raw.samples;
    }
    if (given("--out"))
      job.out = raw.out;
    job.json = raw.json;
    if (given("--threads")) {
      if (raw.threads < 1)
        throw UsageError("--threads must be >= 1");
      job.threads = raw.threads;
    }
    if (job.command == Command::Verify) {
      job.seed = raw.seed;
      if (given("--corrupt")) {
        if (!find_check(raw.corrupt))
          throw UsageError("--corrupt: unknown check id '" + raw.corrupt + "'");
        job.corrupt = raw.corrupt;
      }
      if (given("--lambda-grid"))
        job.lambda_grid = parse_lambda_grid(raw.lambda_grid);
      job.timestamps = raw.timestamps;
    }
    return job;
  }
};

/// Turns a flat JSON job object into argv (command first).
inline std::vector<std::string> job_file_args(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw UsageError("cannot read job file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("job file '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
    throw UsageError("job file must be an object with a string \"command\"");
  std::vector<std::string> args{j["command"].get<std::string>()};
  for (const auto& [key, value] : j.items()) {
    if (key == "command")
      continue;
    if (value.is_boolean()) {
      if (value.get<bool>())
        args.push_back("--" + key);
    } else if (value.is_string()) {
      args.push_back("--" + key + "=" + value.get<std::string>());
    } else if (value.is_number_integer()) {
      args.push_back("--" + key + "=" + std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      args.push_back("--" + key + "=" + format_double(value.get<double>()));
    } else {
      throw UsageError("job file value for '" + key + "' must be a string, number or boolean");
    }
  }
  return args;
}

} // namespace detail

struct ParseResult {
  std::optional<JobConfig> job; ///< empty when help was printed or parsing failed
  int exit_code = 0;
};

/// Parses argv without the program name. Help goes to `out`, errors and usage to `err`.
inline ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Parser p;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    p.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = p.app.exit(e, out, err);
    return {std::nullopt, code == 0 ? 0 : 2};
  }
  try {
    if (!p.job_file.empty()) {
      if (args.size() != 1 && !(args.size() == 2 && args[0] == "--job"))
        throw UsageError("--job cannot be combined with other flags");
      return parse_args(detail::job_file_args(p.job_file), out, err);
    }
    return {p.build(), 0};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << p.app.help();
    return {std::nullopt, 2};
  }
}

/// Throws UsageError instead of printing; used by tests and the round-trip.
inline JobConfig parse_job(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  ParseResult r = parse_args(args, out, err);
  if (!r.job)
    throw UsageError(err.str().empty() ? "no job (help requested)" : err.str());
  return *r.job;
}

// ---------------------------------------------------------------- execution

/// Default range of each rendered plane when --window is omitted.
inline Window default_window(Command c, int m) {
  if (c == Command::Julia)
    return {-10.0, 10.0, -10.0, 10.0};
  switch (m) {
  case 2:
    return {-25.0, 25.0, -25.0, 25.0};
  case 3:
    return {-12.0, 12.0, -12.0, 12.0};
  case 4:
    return {-4.0, 2.0, -3.0, 3.0};
  case 5:
    return {-0.8, 0.8, -0.8, 0.8};
  case 6:
    return {-0.15, 0.15, -0.15, 0.15};
  default: {
    const double r = 1.2 * c0_bounds(m).outer_radius;
    return {-r, r, -r, r};
  }
  }
}

/// --threads, else ZMEXP_THREADS, else 0 (all cores).
inline int resolve_threads(const JobConfig& job) {
  if (job.threads)
    return *job.threads;
  if (const char* env = std::getenv("ZMEXP_THREADS"); env && *env) {
    const long long t = parse_integer(env, "ZMEXP_THREADS");
    if (t < 1)
      throw UsageError("ZMEXP_THREADS must be >= 1");
    return static_cast<int>(t);
  }
  return 0;
}

namespace detail {

inline void emit_text(const JobConfig& job, const std::string& text, std::ostream& out) {
  if (!job.out) {
    out << text;
    return;
  }
  std::ofstream os(*job.out, std::ios::trunc);
  if (!os)
    throw std::system_error(errno ? errno : EIO, std::generic_category(), "cannot open '" + *job.out + "'");
  os << text;
  if (!os.flush())
    throw std::system_error(EIO, std::generic_category(), "write failed for '" + *job.out + "'");
}

inline int run_render(const JobConfig& job, std::ostream& err) {
  const int m = job.m.front();
  const Window w = job.window.value_or(default_window(job.command, m));
  const GridSpec spec{w.x0, w.x1, w.y0, w.y1, job.width, job.height};
  IterationPolicy pol;
  if (job.max_iter)
    pol.max_iter = *job.max_iter;
  if (job.escape_re)
    pol.escape_re = *job.escape_re;
  const RenderOptions opts{0, resolve_threads(job)};

  const auto t0 = std::chrono::steady_clock::now();
  const ClassificationGrid grid = job.command == Command::Julia
                                      ? render_dynamical(spec, MapParams(*job.lambda, m), pol, opts)
                                      : render_parameter(spec, m, pol, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Palette palette;
  encode_image(colorize(grid, palette), job.format, *job.out);
  if (job.json) {
    const Complex* lam = job.command == Command::Julia ? &*job.lambda : nullptr;
    JobConfig side = job;
    side.out = *job.out + ".json";
    emit_text(side, render_sidecar(command_name(job.command), spec, pol, palette, m, lam).dump(2) + "\n",
              err);
  }
  err << command_name(job.command) << ": " << spec.width << "x" << spec.height << " in " << std::fixed
      << std::setprecision(3) << secs << " s -> " << *job.out << "\n";
  return 0;
}

inline int run_curves(const JobConfig& job, std::ostream& out) {
  const int m = job.m.front();
  std::vector<CurvePolyline> curves;
  for (int k = job.k_lo; k <= job.k_hi; ++k)
    curves.push_back(job.lambda ? sigma_curve(k, MapParams(*job.lambda, m), job.samples)
                                : gamma_curve(k, m, job.samples));
  std::ostringstream os;
  if (job.json) {
    Json arr = Json::array();
    for (const auto& c : curves)
      arr.push_back(to_json(c));
    Json j{{"m", m}};
    if (job.lambda)
      j["lambda"] = format_complex(*job.lambda);
    j["curves"] = std::move(arr);
    os << j.dump(2) << "\n";
  } else {
    write_curves_csv(os, curves);
  }
  emit_text(job, os.str(), out);
  return 0;
}

inline int run_regions(const JobConfig& job, std::ostream& out) {
  const int m = job.m.front();
  std::optional<double> abs_lambda = job.abs_lambda;
  if (!abs_lambda && job.lambda)
    abs_lambda = std::abs(*job.lambda);
  const ZoneGeometry zones = make_zone_geometry(m, job.k_lo, job.k_hi, job.samples);
  std::ostringstream os;
  if (job.json) {
    Json j;
    if (abs_lambda)
      j["certificates"] = to_json(make_certificates(*abs_lambda, m));
    j["zone_geometry"] = to_json(zones);
    os << j.dump(2) << "\n";
  } else {
    os << std::setprecision(17);
    if (abs_lambda) {
      const RegionCertificates c = make_certificates(*abs_lambda, m);
      os << "abs_lambda " << c.abs_lambda << "\nepsilon0 " << c.epsilon0 << "\nx0 " << c.x0 << "\n";
    }
    os << "m " << m << "\ninner_radius " << zones.c0.inner_radius << "\nouter_radius "
       << zones.c0.outer_radius << "\nD0 " << zones.d0 << "\n";
    for (const auto& [k, iv] : zones.c3_strips)
      os << "c3_strip " << k << " " << iv.lo << " " << iv.hi << "\n";
  }
  emit_text(job, os.str(), out);
  return 0;
}

inline int run_verify(const JobConfig& job, std::ostream& out, std::ostream& err) {
  verify::SuiteConfig cfg;
  cfg.m_set = job.m;
  cfg.seed = job.seed;
  cfg.threads = resolve_threads(job);
  if (job.lambda_grid)
    cfg.lambda_grid = *job.lambda_grid;
  if (job.corrupt)
    cfg.corruption = verify::designated_corruption(*find_check(*job.corrupt));
  const auto t0 = std::chrono::steady_clock::now();
  const verify::VerificationReport report = verify::run_suite(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_text(job, verify::to_json(report, job.timestamps).dump(2) + "\n", out);
  for (const auto& e : report.entries)
    err << (e.pass ? "PASS " : "FAIL ") << e.id << " worst=" << std::setprecision(3) << e.worst_residual
        << " violations=" << e.violations << "/" << e.samples << "\n";
  err << "verify: " << std::fixed << std::setprecision(2) << secs << " s\n";
  return report.all_pass() ? 0 : 1;
}

} // namespace detail

inline int execute(const JobConfig& job, std::ostream& out, std::ostream& err) {
  switch (job.command) {
  case Command::Julia:
  case Command::Param:
    return detail::run_render(job, err);
  case Command::Curves:
    return detail::run_curves(job, out);
  case Command::Regions:
    return detail::run_regions(job, out);
  case Command::Verify:
    return detail::run_verify(job, out, err);
  }
  return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const ParseResult parsed = parse_args(args, out, err);
  if (!parsed.job)
    return parsed.exit_code;
  try {
    return execute(*parsed.job, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + (argc > 0 ? 1 : 0), argv + argc));
}

} // namespace zmexp::cli
