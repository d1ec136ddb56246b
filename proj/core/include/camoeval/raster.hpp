#pragma once

#include <cstdint>
#include <vector>

#include "camoeval/errors.hpp"

namespace camoeval {

/// (row, col) image coordinate. Row-major everywhere in this library.
struct PixelCoord {
    int row = 0;
    int col = 0;
    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// H x W real-valued prediction map with entries in [0,1], stored row-major.
class GrayMap {
public:
    GrayMap(int width, int height, double fill = 0.0);

    /// Takes ownership of `values` (size must be width*height, entries in [0,1]).
    static GrayMap from_values(int width, int height, std::vector<double> values);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    double at(int row, int col) const { return values_[static_cast<size_t>(row) * width_ + col]; }
    void set(int row, int col, double v);

    const std::vector<double>& values() const { return values_; }

    /// Entrywise L1 norm (values are non-negative, so this is the plain sum).
    double l1() const;
    double mean() const;

    friend bool operator==(const GrayMap&, const GrayMap&) = default;

private:
    GrayMap() = default;
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// H x W binary mask with entries in {0,1}, stored row-major.
class BinaryMask {
public:
    BinaryMask(int width, int height, bool fill = false);

    static BinaryMask from_values(int width, int height, std::vector<std::uint8_t> values);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    bool at(int row, int col) const { return values_[static_cast<size_t>(row) * width_ + col] != 0; }
    void set(int row, int col, bool v) { values_[static_cast<size_t>(row) * width_ + col] = v ? 1 : 0; }

    const std::vector<std::uint8_t>& values() const { return values_; }

    /// Number of foreground pixels.
    int count() const;
    bool empty_foreground() const { return count() == 0; }

    /// The mask as a GrayMap (0.0 / 1.0 values).
    GrayMap to_gray() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    BinaryMask() = default;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> values_;
};

inline void require_same_dims(int w1, int h1, int w2, int h2) {
    if (w1 != w2 || h1 != h2) throw DimensionMismatch("raster dimensions differ");
}
inline void require_same_dims(const GrayMap& x, const BinaryMask& y) {
    require_same_dims(x.width(), x.height(), y.width(), y.height());
}
inline void require_same_dims(const BinaryMask& x, const BinaryMask& y) {
    require_same_dims(x.width(), x.height(), y.width(), y.height());
}
inline void require_same_dims(const GrayMap& x, const GrayMap& y) {
    require_same_dims(x.width(), x.height(), y.width(), y.height());
}

/// Data-dependent binarization: threshold tau = min(2*mean(x), 1 - 1e-9),
/// floored at 1e-9 so an all-zero map binarizes to an all-zero mask.
/// A pixel is foreground iff x(p) >= max(tau, 1e-9).
BinaryMask binarize_adaptive(const GrayMap& x);

/// Coordinates of all foreground pixels in row-major order. May be empty.
std::vector<PixelCoord> foreground_pixels(const BinaryMask& y);

enum class MorphOp { Erode, Dilate };

/// Binary erosion/dilation with the full (2*radius+1)^2 square structuring
/// element and zero padding outside the image.
BinaryMask morph(const BinaryMask& y, MorphOp op, int radius);

}  // namespace camoeval
