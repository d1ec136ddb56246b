#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "camoeval/color.hpp"
#include "camoeval/raster.hpp"

namespace camoeval::testing {

// Mask from ASCII art: '#' = foreground, anything else background; rows
// separated by '\n'. Trailing newline optional.
inline BinaryMask mask_from_art(std::string_view art) {
    std::vector<std::vector<std::uint8_t>> rows(1);
    for (char c : art) {
        if (c == '\n') {
            rows.emplace_back();
        } else {
            rows.back().push_back(c == '#' ? 1 : 0);
        }
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    std::vector<std::uint8_t> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return BinaryMask::from_values(w, h, std::move(flat));
}

inline BinaryMask disk_mask(int w, int h, double cr, double cc, double radius) {
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= radius * radius) m.set(r, c, true);
    return m;
}

inline BinaryMask rect_mask(int w, int h, int r0, int c0, int rh, int cw) {
    BinaryMask m(w, h);
    for (int r = r0; r < r0 + rh; ++r)
        for (int c = c0; c < c0 + cw; ++c) m.set(r, c, true);
    return m;
}

inline GrayMap random_gray(int w, int h, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(static_cast<size_t>(w) * h);
    for (double& x : v) x = u(rng);
    return GrayMap::from_values(w, h, std::move(v));
}

inline BinaryMask random_blob(int w, int h, std::mt19937_64& rng, int margin = 0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rad = 2.0 + u(rng) * (std::min(w, h) / 2.0 - margin - 2.5);
    const double cr = margin + rad + u(rng) * (h - 2.0 * (margin + rad));
    const double cc = margin + rad + u(rng) * (w - 2.0 * (margin + rad));
    return disk_mask(w, h, cr, cc, rad);
}

inline GrayMap gray_of(const BinaryMask& m) { return m.to_gray(); }

inline RgbImage uniform_rgb(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RgbImage img(w, h);
    for (int rr = 0; rr < h; ++rr)
        for (int cc = 0; cc < w; ++cc) img.set(rr, cc, r, g, b);
    return img;
}

// Mirror helpers used by the structure/alignment symmetry checks.
inline BinaryMask hflip(const BinaryMask& m) {
    BinaryMask out(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) out.set(r, m.width() - 1 - c, m.at(r, c));
    return out;
}
inline GrayMap hflip(const GrayMap& m) {
    GrayMap out(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) out.set(r, m.width() - 1 - c, m.at(r, c));
    return out;
}

}  // namespace camoeval::testing
