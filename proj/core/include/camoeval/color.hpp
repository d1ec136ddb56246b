#pragma once

#include <cstdint>
#include <vector>

#include "camoeval/errors.hpp"

namespace camoeval {

/// One CIELAB color. L in [0,100]; a,b unbounded in principle but within
/// [-128,128] for anything converted from 8-bit sRGB.
struct LabTriple {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
    friend bool operator==(const LabTriple&, const LabTriple&) = default;
};

/// Interleaved 8-bit sRGB image (r,g,b per pixel, row-major).
class RgbImage {
public:
    RgbImage(int width, int height);
    static RgbImage from_values(int width, int height, std::vector<std::uint8_t> rgb);

    int width() const { return width_; }
    int height() const { return height_; }

    void set(int row, int col, std::uint8_t r, std::uint8_t g, std::uint8_t b);
    const std::uint8_t* at(int row, int col) const {
        return &values_[(static_cast<size_t>(row) * width_ + col) * 3];
    }
    const std::vector<std::uint8_t>& values() const { return values_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> values_;
};

/// Per-pixel CIELAB image, row-major.
class LabImage {
public:
    LabImage(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    LabTriple at(int row, int col) const { return values_[static_cast<size_t>(row) * width_ + col]; }
    void set(int row, int col, LabTriple v) { values_[static_cast<size_t>(row) * width_ + col] = v; }
    const std::vector<LabTriple>& values() const { return values_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<LabTriple> values_;
};

/// sRGB (D65, 2-degree observer, sRGB gamma decoding) to CIELAB, per pixel.
LabImage rgb_to_lab(const RgbImage& img);
LabTriple srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// CIEDE2000 color difference (kL = kC = kH = 1), clamped to [0,100].
double ciede2000(const LabTriple& c1, const LabTriple& c2);

}  // namespace camoeval
