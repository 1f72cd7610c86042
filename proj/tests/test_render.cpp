#include <gtest/gtest.h>

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>
#include <vector>

#include "zmexp/image.hpp"
#include "zmexp/render.hpp"

using namespace zmexp;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "zmexp_test_render";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// Decodes an 8-bit RGB PNG with libpng's simplified API.
RgbImage read_png(const fs::path& p) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, p.c_str()))
    throw std::runtime_error(image.message);
  image.format = PNG_FORMAT_RGB;
  RgbImage out{static_cast<int>(image.width), static_cast<int>(image.height), {}};
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr))
    throw std::runtime_error(image.message);
  return out;
}

const MapParams kJulia{{-2.1, 0.0}, 2};

} // namespace

TEST(GridSpec, PixelCentres) {
  const GridSpec g{-10.0, 10.0, -10.0, 10.0, 4, 2};
  EXPECT_EQ(g.pixel_center(0, 0), Complex(-7.5, 5.0));
  EXPECT_EQ(g.pixel_center(3, 1), Complex(7.5, -5.0));
  EXPECT_THROW((GridSpec{1.0, 0.0, 0.0, 1.0, 2, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((GridSpec{0.0, 1.0, 0.0, 1.0, 0, 2}.validate()), std::invalid_argument);
}

TEST(RenderDynamical, TilingInvariance) {
  const GridSpec spec{-10.0, 10.0, -10.0, 10.0, 96, 80};
  const IterationPolicy pol;
  const auto one = render_dynamical(spec, kJulia, pol, {1, 1});
  for (int tiles : {4, 16})
    for (int workers : {1, 3, 8}) {
      const auto g = render_dynamical(spec, kJulia, pol, {tiles, workers});
      EXPECT_TRUE(g.cells == one.cells) << tiles << " tiles, " << workers << " workers";
    }
}

TEST(RenderDynamical, CellsMatchPointwiseClassification) {
  const GridSpec spec{-3.0, 3.0, -2.0, 2.0, 31, 17};
  const IterationPolicy pol;
  const auto grid = render_dynamical(spec, kJulia, pol);
  const auto certs = make_certificates(kJulia);
  for (int j = 0; j < spec.height; ++j)
    for (int i = 0; i < spec.width; ++i) {
      const auto o = iterate_orbit(spec.pixel_center(i, j), kJulia, pol, certs);
      EXPECT_EQ(grid.at(i, j).verdict, to_verdict(o));
      EXPECT_EQ(grid.at(i, j).step, outcome_step(o));
    }
}

TEST(RenderDynamical, MonotoneRefinement) {
  const GridSpec spec{-10.0, 10.0, -10.0, 10.0, 64, 64};
  IterationPolicy pol;
  pol.max_iter = 50;
  const auto coarse = render_dynamical(spec, kJulia, pol);
  pol.max_iter = 100;
  const auto fine = render_dynamical(spec, kJulia, pol);
  for (std::size_t c = 0; c < coarse.cells.size(); ++c) {
    // Escape and capture verdicts are final once issued.
    if (coarse.cells[c].verdict != Verdict::OtherBounded) {
      EXPECT_EQ(fine.cells[c], coarse.cells[c]);
    }
  }
}

TEST(RenderDynamical, ContainsAllFates) {
  const GridSpec spec{-10.0, 10.0, -10.0, 10.0, 64, 64};
  const auto grid = render_dynamical(spec, kJulia, {});
  int basin = 0, escaping = 0;
  for (const auto& c : grid.cells) {
    basin += c.verdict == Verdict::Basin0;
    escaping += c.verdict == Verdict::Escaping;
  }
  EXPECT_GT(basin, 0);
  EXPECT_GT(escaping, 0);
}

TEST(RenderParameter, OriginIsCaptured) {
  const GridSpec spec{-1.0, 1.0, -1.0, 1.0, 3, 3}; // centre pixel is lambda = 0
  const auto grid = render_parameter(spec, 2, {});
  EXPECT_EQ(grid.at(1, 1).verdict, Verdict::Captured);
  EXPECT_EQ(grid.at(1, 1).step, 0);
  EXPECT_THROW(render_parameter(spec, 1, {}), std::invalid_argument);
}

TEST(RenderParameter, TilingInvariance) {
  const GridSpec spec{-25.0, 25.0, -25.0, 25.0, 48, 48};
  const auto a = render_parameter(spec, 2, {}, {1, 1});
  const auto b = render_parameter(spec, 2, {}, {16, 4});
  EXPECT_TRUE(a.cells == b.cells);
}

TEST(RenderGrid, PropagatesExceptions) {
  const GridSpec spec{0.0, 1.0, 0.0, 1.0, 8, 8};
  auto boom = [](Complex) -> Cell { throw std::runtime_error("boom"); };
  EXPECT_THROW(render_grid(spec, boom, {4, 2}), std::runtime_error);
}

TEST(Colorize, DefaultPalette) {
  ClassificationGrid g{{0.0, 1.0, 0.0, 1.0, 3, 1},
                       {{Verdict::Basin0, 1}, {Verdict::Escaping, 2}, {Verdict::OtherBounded, 200}}};
  const RgbImage img = colorize(g);
  EXPECT_EQ(img.pixel(0, 0), (Rgb{255, 0, 0}));
  EXPECT_EQ(img.pixel(1, 0), (Rgb{0, 0, 0}));
  EXPECT_EQ(img.pixel(2, 0), (Rgb{0, 0, 255}));
  Palette p;
  p.modulate_steps = true;
  EXPECT_LT(colorize(g, p).pixel(0, 0).r, 255);
}

TEST(Ppm, ExactBytes) {
  const RgbImage img{1, 1, {255, 0, 0}};
  const std::string header = "P6\n1 1\n255\n";
  std::vector<std::uint8_t> expect(header.begin(), header.end());
  expect.insert(expect.end(), {0xFF, 0x00, 0x00});
  EXPECT_EQ(encode_ppm(img), expect);
  const auto path = temp_path("one.ppm");
  write_ppm(img, path.string());
  EXPECT_EQ(read_bytes(path), expect);
}

TEST(Ppm, RejectsMismatchedBuffer) {
  EXPECT_THROW(encode_ppm(RgbImage{2, 2, {1, 2, 3}}), std::invalid_argument);
}

TEST(Ppm, WriteFailureNamesPath) {
  const std::string bad = "/nonexistent-dir/zmexp/out.ppm";
  try {
    write_ppm(RgbImage{1, 1, {0, 0, 0}}, bad);
    FAIL() << "expected system_error";
  } catch (const std::system_error& e) {
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
  EXPECT_THROW(write_png(RgbImage{1, 1, {0, 0, 0}}, bad), std::system_error);
}

TEST(Png, RoundTrip) {
  const GridSpec spec{-10.0, 10.0, -10.0, 10.0, 37, 23};
  const RgbImage img = colorize(render_dynamical(spec, kJulia, {}));
  const auto path = temp_path("round.png");
  write_png(img, path.string());
  const RgbImage back = read_png(path);
  EXPECT_EQ(back.width, img.width);
  EXPECT_EQ(back.height, img.height);
  EXPECT_EQ(back.pixels, img.pixels);
}

TEST(ImageFormat, Parse) {
  EXPECT_EQ(parse_image_format("ppm"), ImageFormat::PPM);
  EXPECT_EQ(parse_image_format("png"), ImageFormat::PNG);
  EXPECT_THROW(parse_image_format("gif"), std::invalid_argument);
  EXPECT_EQ(to_string(ImageFormat::PNG), "png");
}
