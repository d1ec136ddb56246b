#pragma once

#include <string>

#include "camoeval/color.hpp"
#include "camoeval/raster.hpp"

namespace camoeval {

/// Decodes an 8/16-bit grayscale or RGB image (PNG/JPEG); values are scaled
/// to [0,1] by the maximum representable value, RGB is collapsed by Rec.601
/// luminance. Throws IoError (missing file) / DecodeError (bad content).
GrayMap load_gray(const std::string& path);

/// As load_gray, then thresholds at scaled value >= 0.5 (8-bit: >= 128).
BinaryMask load_binary(const std::string& path);

/// Decodes a color image into 8-bit sRGB.
RgbImage load_rgb(const std::string& path);

/// Writes a [0,1] map as a 16-bit grayscale PNG, pixel = round(v * 65535).
void save_gray16_png(const GrayMap& map, const std::string& path);

/// Writes a colormapped preview PNG of a [0,1] map on the embedded blue-to-
/// red ramp (warm = high).
void save_heatmap_png(const GrayMap& map, const std::string& path);

/// The preview ramp, exposed for tests: value in [0,1] to 8-bit RGB.
void heatmap_color(double value, std::uint8_t rgb[3]);

}  // namespace camoeval
