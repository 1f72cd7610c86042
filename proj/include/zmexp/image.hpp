#pragma once
/**
 * \file image.hpp
 * \brief Binary PPM (P6, maxval 255) and PNG (libpng) output for RGB images.
 */

#include <png.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "render.hpp"

namespace zmexp {

enum class ImageFormat { PPM, PNG };

inline ImageFormat parse_image_format(const std::string& name) {
  if (name == "ppm" || name == "PPM")
    return ImageFormat::PPM;
  if (name == "png" || name == "PNG")
    return ImageFormat::PNG;
  throw std::invalid_argument("unknown image format '" + name + "' (expected ppm or png)");
}

inline std::string to_string(ImageFormat f) { return f == ImageFormat::PPM ? "ppm" : "png"; }

namespace detail {

inline void check_image(const RgbImage& img) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != 3 * static_cast<std::size_t>(img.width) * img.height)
    throw std::invalid_argument("image buffer does not match its dimensions");
}

[[noreturn]] inline void throw_io(const std::string& what, const std::string& path, int err) {
  throw std::system_error(err, std::generic_category(), what + " '" + path + "'");
}

} // namespace detail

/// The exact P6 byte stream: "P6\n<w> <h>\n255\n" followed by RGB triples.
inline std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
  detail::check_image(img);
  const std::string header =
      "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

inline void write_ppm(const RgbImage& img, const std::string& path) {
  const auto bytes = encode_ppm(img);
  errno = 0;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    detail::throw_io("cannot open for writing", path, errno ? errno : EIO);
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  os.flush();
  if (!os)
    detail::throw_io("write failed for", path, errno ? errno : EIO);
}

inline void write_png(const RgbImage& img, const std::string& path) {
  detail::check_image(img);
  errno = 0;
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp)
    detail::throw_io("cannot open for writing", path, errno ? errno : EIO);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png)
    throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
  for (int j = 0; j < img.height; ++j)
    rows[static_cast<std::size_t>(j)] =
        const_cast<png_bytep>(img.pixels.data() + 3 * static_cast<std::size_t>(j) * img.width);

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng failed while writing '" + path + "'");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  if (std::fflush(fp.get()) != 0)
    detail::throw_io("write failed for", path, errno ? errno : EIO);
}

inline void encode_image(const RgbImage& img, ImageFormat format, const std::string& path) {
  if (format == ImageFormat::PPM)
    write_ppm(img, path);
  else
    write_png(img, path);
}

} // namespace zmexp
