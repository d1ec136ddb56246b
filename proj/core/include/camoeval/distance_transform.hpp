#pragma once

#include <vector>

#include "camoeval/raster.hpp"

namespace camoeval {

/// Exact Euclidean distance transform of a binary feature set: for every
/// pixel, the distance to the nearest feature pixel and that pixel's
/// coordinates. Feature pixels map to themselves with distance 0.
struct DistanceField {
    int width = 0;
    int height = 0;
    std::vector<double> dist;         // Euclidean distance, row-major
    std::vector<PixelCoord> nearest;  // nearest feature pixel, row-major

    double dist_at(int row, int col) const { return dist[static_cast<size_t>(row) * width + col]; }
    PixelCoord nearest_at(int row, int col) const {
        return nearest[static_cast<size_t>(row) * width + col];
    }
};

/// Two-pass exact squared-distance transform (column scan, then a row-wise
/// lower envelope of parabolas). Throws EmptyForeground if `features` has no
/// foreground pixel.
DistanceField distance_transform(const BinaryMask& features);

}  // namespace camoeval
