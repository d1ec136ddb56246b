#pragma once

#include <utility>
#include <vector>

#include "camoeval/raster.hpp"

namespace camoeval {

/// Per-pixel camouflage degree D in [0,1], nonzero only on the GT foreground.
class CamoMap {
public:
    /// Validates that every off-foreground entry is exactly zero.
    static CamoMap from_values(const BinaryMask& fg, std::vector<double> values) {
        if (values.size() != static_cast<size_t>(fg.pixel_count()))
            throw Error("CamoMap value count does not match mask dimensions");
        const auto& mask = fg.values();
        for (size_t i = 0; i < values.size(); ++i)
            if (mask[i] == 0 && values[i] != 0.0)
                throw Error("CamoMap must be zero off the GT foreground");
        CamoMap d;
        d.map_ = GrayMap::from_values(fg.width(), fg.height(), std::move(values));
        return d;
    }

    /// All-zero degree map (weighting collapses to the plain mask).
    static CamoMap zero(const BinaryMask& fg) {
        return from_values(fg, std::vector<double>(static_cast<size_t>(fg.pixel_count()), 0.0));
    }

    int width() const { return map_.width(); }
    int height() const { return map_.height(); }
    double at(int row, int col) const { return map_.at(row, col); }
    const GrayMap& map() const { return map_; }

private:
    CamoMap() : map_(1, 1) {}
    GrayMap map_;
};

}  // namespace camoeval
