#include "catmorph/raster.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "catmorph/error.hpp"
#include "catmorph/simplex.hpp"

namespace catmorph::io {
namespace {

std::uint8_t quantize(double unit) {
  const double v = std::clamp(unit, 0.0, 1.0) * 255.0;
  return static_cast<std::uint8_t>(std::lround(v));
}

std::uint8_t hex_digit(char c, std::string_view entry) {
  if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
  throw ArgumentError("bad palette color '" + std::string(entry) + "'");
}

RgbRaster blank(const Shape& shape) {
  if (shape.rank() > 2) throw ArgumentError("only 1D and 2D images can be rendered");
  RgbRaster r;
  r.height = shape.rank() == 2 ? shape.extent(0) : 1;
  r.width = shape.rank() == 2 ? shape.extent(1) : shape.extent(0);
  r.rgb.assign(r.width * r.height * 3, 0);
  return r;
}

void put_gray(RgbRaster& r, std::size_t p, double unit) {
  const auto g = quantize(unit);
  r.rgb[3 * p] = r.rgb[3 * p + 1] = r.rgb[3 * p + 2] = g;
}

void require_palette(const Palette& palette, std::size_t channels) {
  if (palette.size() != channels) {
    throw ArgumentError("palette has " + std::to_string(palette.size()) + " colors for " +
                        std::to_string(channels) + " categories");
  }
}

}  // namespace

Palette parse_palette(std::string_view text) {
  Palette out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view entry = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (!entry.empty() && entry.front() == '#') entry.remove_prefix(1);
    if (entry.size() != 6) {
      throw ArgumentError("bad palette color '" + std::string(entry) + "'");
    }
    Rgb c{};
    for (std::size_t ch = 0; ch < 3; ++ch) {
      c[ch] = static_cast<std::uint8_t>(hex_digit(entry[2 * ch], entry) * 16 +
                                        hex_digit(entry[2 * ch + 1], entry));
    }
    out.push_back(c);
  }
  if (out.empty()) throw ArgumentError("empty palette");
  return out;
}

std::string format_palette(const Palette& palette) {
  std::string out;
  char buf[8];
  for (const Rgb& c : palette) {
    if (!out.empty()) out += ',';
    std::snprintf(buf, sizeof buf, "%02x%02x%02x", c[0], c[1], c[2]);
    out += buf;
  }
  return out;
}

RgbRaster read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw DataError("cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  RgbRaster r;
  r.width = image.width;
  r.height = image.height;
  r.rgb.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, r.rgb.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw DataError("cannot decode PNG " + path.string() + ": " + msg);
  }
  return r;
}

void write_png(const RgbRaster& raster, const std::filesystem::path& path) {
  if (raster.rgb.size() != raster.width * raster.height * 3) {
    throw ArgumentError("raster buffer does not match its size");
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width);
  image.height = static_cast<png_uint_32>(raster.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, raster.rgb.data(), 0,
                               nullptr)) {
    throw DataError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

CategoricalImage import_png_labels(const std::filesystem::path& path, const Palette& palette) {
  if (palette.size() < 2) throw ArgumentError("a label palette needs at least 2 colors");
  const RgbRaster r = read_png(path);
  CategoricalImage out(Shape{r.height, r.width}, palette.size());
  for (std::size_t p = 0; p < r.width * r.height; ++p) {
    const Rgb c{r.rgb[3 * p], r.rgb[3 * p + 1], r.rgb[3 * p + 2]};
    const auto it = std::find(palette.begin(), palette.end(), c);
    if (it == palette.end()) {
      throw DataError("color " + format_palette({c}) + " at row " +
                      std::to_string(p / r.width) + ", column " +
                      std::to_string(p % r.width) + " is not in the palette");
    }
    out.at(p, static_cast<std::size_t>(it - palette.begin())) = 1.0;
  }
  return out;
}

std::string_view to_string(RenderStyle style) noexcept {
  switch (style) {
    case RenderStyle::rgb_mixture: return "rgb-mixture";
    case RenderStyle::entropy: return "entropy";
    case RenderStyle::magnitude: return "magnitude";
    case RenderStyle::argmax: return "argmax";
  }
  return "?";
}

RenderStyle parse_render_style(std::string_view text) {
  for (auto s : {RenderStyle::rgb_mixture, RenderStyle::entropy, RenderStyle::magnitude,
                 RenderStyle::argmax}) {
    if (text == to_string(s)) return s;
  }
  throw ArgumentError("unknown render style '" + std::string(text) + "'");
}

RgbRaster render(const CategoricalImage& img, RenderStyle style, const Palette& palette) {
  RgbRaster r = blank(img.shape());
  const std::size_t n = img.pixel_count();
  switch (style) {
    case RenderStyle::rgb_mixture:
      require_palette(palette, img.channels());
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t ch = 0; ch < 3; ++ch) {
          double v = 0.0;
          for (std::size_t k = 0; k < img.channels(); ++k) v += img.at(p, k) * palette[k][ch];
          r.rgb[3 * p + ch] = quantize(v / 255.0);
        }
      }
      break;
    case RenderStyle::entropy: {
      const ScalarField h = entropy_map(img);
      const double hmax = std::log(static_cast<double>(img.channels()));
      for (std::size_t p = 0; p < n; ++p) put_gray(r, p, h[p] / hmax);
      break;
    }
    case RenderStyle::magnitude:
      throw ArgumentError("magnitude rendering needs a Dirichlet image");
    case RenderStyle::argmax: {
      require_palette(palette, img.channels());
      const LabelImage labels = argmax_labels(img);
      for (std::size_t p = 0; p < n; ++p) {
        const Rgb& c = palette[static_cast<std::size_t>(labels[p])];
        std::copy(c.begin(), c.end(), r.rgb.begin() + static_cast<std::ptrdiff_t>(3 * p));
      }
      break;
    }
  }
  return r;
}

RgbRaster render(const DirichletImage& img, RenderStyle style, const Palette& palette) {
  if (style != RenderStyle::magnitude) {
    return render(dirichlet_expectation(img), style, palette);
  }
  RgbRaster r = blank(img.shape());
  const ScalarField m = magnitude_map(img);
  const auto values = m.values();
  const double top = *std::max_element(values.begin(), values.end());
  for (std::size_t p = 0; p < m.size(); ++p) put_gray(r, p, m[p] / top);
  return r;
}

}  // namespace catmorph::io
