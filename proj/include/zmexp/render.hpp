#pragma once
/**
 * \file render.hpp
 * \brief Band-parallel classification grids for both planes and their colouring.
 *
 * The grid is cut into horizontal bands; each band is owned by exactly one
 * worker and written into its own slice of the cell array, so the result does
 * not depend on the band count or the number of workers.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dynamics.hpp"
#include "map.hpp"
#include "parameter.hpp"
#include "regions.hpp"

namespace zmexp {

struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  double y_min = -10.0;
  double y_max = 10.0;
  int width = 512;
  int height = 512;

  void validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
      throw std::invalid_argument("grid window must satisfy x_min < x_max and y_min < y_max");
    if (width < 1 || height < 1)
      throw std::invalid_argument("grid size must be at least 1x1");
  }

  double dx() const { return (x_max - x_min) / width; }
  double dy() const { return (y_max - y_min) / height; }

  /// Centre of pixel (i, j); row 0 is the top edge (y_max).
  Complex pixel_center(int i, int j) const {
    return {x_min + (i + 0.5) * dx(), y_max - (j + 0.5) * dy()};
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Cell {
  Verdict verdict = Verdict::OtherBounded;
  std::int32_t step = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct ClassificationGrid {
  GridSpec spec;
  std::vector<Cell> cells; ///< row-major, width * height

  const Cell& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * spec.width + i];
  }
};

struct RenderOptions {
  int tiles = 0;   ///< horizontal bands; 0 picks one per 8 rows
  int workers = 0; ///< threads; 0 uses the hardware concurrency
};

/// Runs `classify(z) -> Cell` at every pixel centre.
template <class Classifier>
ClassificationGrid render_grid(const GridSpec& spec, Classifier&& classify,
                               const RenderOptions& opts = {}) {
  spec.validate();
  ClassificationGrid grid{spec, std::vector<Cell>(static_cast<std::size_t>(spec.width) * spec.height)};

  const int tiles = std::clamp(opts.tiles > 0 ? opts.tiles : (spec.height + 7) / 8, 1, spec.height);
  int workers = opts.workers > 0 ? opts.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, tiles);

  auto band_rows = [&](int t) {
    const int begin = static_cast<int>(static_cast<long long>(spec.height) * t / tiles);
    const int end = static_cast<int>(static_cast<long long>(spec.height) * (t + 1) / tiles);
    return std::pair{begin, end};
  };

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (int t = next.fetch_add(1); t < tiles; t = next.fetch_add(1)) {
        const auto [begin, end] = band_rows(t);
        for (int j = begin; j < end; ++j)
          for (int i = 0; i < spec.width; ++i)
            grid.cells[static_cast<std::size_t>(j) * spec.width + i] = classify(spec.pixel_center(i, j));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure)
        failure = std::current_exception();
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(work);
  }
  if (failure)
    std::rethrow_exception(failure);
  return grid;
}

inline ClassificationGrid render_dynamical(const GridSpec& spec, const MapParams& p,
                                           const IterationPolicy& pol, const RenderOptions& opts = {}) {
  pol.validate();
  const RegionCertificates certs = make_certificates(p);
  return render_grid(
      spec,
      [&](Complex z) {
        const OrbitOutcome o = iterate_orbit(z, p, pol, certs);
        return Cell{to_verdict(o), outcome_step(o)};
      },
      opts);
}

inline ClassificationGrid render_parameter(const GridSpec& spec, int m, const IterationPolicy& pol,
                                           const RenderOptions& opts = {}) {
  pol.validate();
  if (m < 2)
    throw std::invalid_argument("m must be >= 2");
  return render_grid(
      spec,
      [&](Complex lambda) {
        // The map is undefined at lambda = 0, which lies in the C^0 disk.
        if (lambda == Complex(0.0, 0.0))
          return Cell{Verdict::Captured, 0};
        const ParamClass c = classify_parameter(lambda, m, pol);
        return Cell{to_verdict(c), class_step(c)};
      },
      opts);
}

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  Rgb basin{255, 0, 0};
  Rgb escaping{0, 0, 0};
  Rgb bounded{0, 0, 255};
  /// Darken cells by their step index.
  bool modulate_steps = false;

  const Rgb& color(Verdict v) const {
    switch (v) {
    case Verdict::Basin0:
      return basin;
    case Verdict::Escaping:
      return escaping;
    case Verdict::OtherBounded:
      break;
    }
    return bounded;
  }

  friend bool operator==(const Palette&, const Palette&) = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels; ///< row-major RGB, 3 bytes per pixel

  Rgb pixel(int i, int j) const {
    const std::size_t o = 3 * (static_cast<std::size_t>(j) * width + i);
    return {pixels[o], pixels[o + 1], pixels[o + 2]};
  }
};

inline RgbImage colorize(const ClassificationGrid& grid, const Palette& palette = {}) {
  RgbImage img{grid.spec.width, grid.spec.height, {}};
  img.pixels.reserve(grid.cells.size() * 3);
  for (const Cell& c : grid.cells) {
    Rgb rgb = palette.color(c.verdict);
    if (palette.modulate_steps) {
      // Brightness falls from 1 to 0.25 over the first 32 steps.
      const double f = 1.0 - 0.75 * std::min(c.step, 32) / 32.0;
      rgb = {static_cast<std::uint8_t>(rgb.r * f), static_cast<std::uint8_t>(rgb.g * f),
             static_cast<std::uint8_t>(rgb.b * f)};
    }
    img.pixels.push_back(rgb.r);
    img.pixels.push_back(rgb.g);
    img.pixels.push_back(rgb.b);
  }
  return img;
}

} // namespace zmexp
