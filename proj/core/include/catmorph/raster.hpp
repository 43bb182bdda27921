#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "catmorph/image.hpp"

/// 8-bit RGB raster bridges: PNG label import and rendering.
namespace catmorph::io {

using Rgb = std::array<std::uint8_t, 3>;
/// Entry k is the color of category k.
using Palette = std::vector<Rgb>;

/// Comma-separated hex colors, e.g. "ff0000,00ff00,#0000ff".
Palette parse_palette(std::string_view text);
std::string format_palette(const Palette& palette);

/// Row-major RGB pixels; 1D images are one row high.
struct RgbRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;
};

RgbRaster read_png(const std::filesystem::path& path);
void write_png(const RgbRaster& raster, const std::filesystem::path& path);

/// One-hot image whose channel k marks pixels colored palette[k]. Throws
/// DataError naming the color and (row, column) of an unmapped pixel.
CategoricalImage import_png_labels(const std::filesystem::path& path, const Palette& palette);

enum class RenderStyle {
  rgb_mixture,  ///< sum_k f_k * palette[k]
  entropy,      ///< H / ln(channels), white = maximal entropy
  magnitude,    ///< |alpha| / max |alpha|
  argmax,       ///< palette color of the most likely category
};

std::string_view to_string(RenderStyle style) noexcept;
RenderStyle parse_render_style(std::string_view text);

/// Channels are rounded half away from zero. Throws ArgumentError for a
/// palette size mismatch, magnitude on a categorical image, or rank 3.
RgbRaster render(const CategoricalImage& img, RenderStyle style, const Palette& palette = {});
/// Non-magnitude styles render the expectation.
RgbRaster render(const DirichletImage& img, RenderStyle style, const Palette& palette = {});

}  // namespace catmorph::io
