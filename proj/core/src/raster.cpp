#include "camoeval/raster.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace camoeval {

namespace {

void require_dims(int width, int height) {
    if (width < 1 || height < 1)
        throw Error("raster dimensions must be >= 1, got " + std::to_string(width) + "x" +
                    std::to_string(height));
}

}  // namespace

GrayMap::GrayMap(int width, int height, double fill) : width_(width), height_(height) {
    require_dims(width, height);
    if (fill < 0.0 || fill > 1.0) throw Error("GrayMap fill outside [0,1]");
    values_.assign(static_cast<size_t>(width) * height, fill);
}

GrayMap GrayMap::from_values(int width, int height, std::vector<double> values) {
    require_dims(width, height);
    if (values.size() != static_cast<size_t>(width) * height)
        throw Error("GrayMap value count does not match dimensions");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw Error("GrayMap value outside [0,1]");
    GrayMap m;
    m.width_ = width;
    m.height_ = height;
    m.values_ = std::move(values);
    return m;
}

void GrayMap::set(int row, int col, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error("GrayMap value outside [0,1]");
    values_[static_cast<size_t>(row) * width_ + col] = v;
}

double GrayMap::l1() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double GrayMap::mean() const {
    return l1() / static_cast<double>(values_.size());
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
    require_dims(width, height);
    values_.assign(static_cast<size_t>(width) * height, fill ? 1 : 0);
}

BinaryMask BinaryMask::from_values(int width, int height, std::vector<std::uint8_t> values) {
    require_dims(width, height);
    if (values.size() != static_cast<size_t>(width) * height)
        throw Error("BinaryMask value count does not match dimensions");
    for (auto v : values)
        if (v > 1) throw Error("BinaryMask value outside {0,1}");
    BinaryMask m;
    m.width_ = width;
    m.height_ = height;
    m.values_ = std::move(values);
    return m;
}

int BinaryMask::count() const {
    return static_cast<int>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

GrayMap BinaryMask::to_gray() const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(),
                   [](std::uint8_t b) { return b ? 1.0 : 0.0; });
    return GrayMap::from_values(width_, height_, std::move(v));
}

BinaryMask binarize_adaptive(const GrayMap& x) {
    constexpr double kEps = 1e-9;
    const double tau = std::max(std::min(2.0 * x.mean(), 1.0 - kEps), kEps);
    std::vector<std::uint8_t> out(x.values().size());
    const auto& v = x.values();
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] >= tau ? 1 : 0;
    return BinaryMask::from_values(x.width(), x.height(), std::move(out));
}

std::vector<PixelCoord> foreground_pixels(const BinaryMask& y) {
    std::vector<PixelCoord> fg;
    fg.reserve(static_cast<size_t>(y.count()));
    for (int r = 0; r < y.height(); ++r)
        for (int c = 0; c < y.width(); ++c)
            if (y.at(r, c)) fg.push_back({r, c});
    return fg;
}

namespace {

// One separable pass along rows (axis=0) or columns (axis=1). The square
// structuring element factors into two 1-D window passes; zero padding means
// erosion needs the full window inside the frame.
std::vector<std::uint8_t> window_pass(const std::vector<std::uint8_t>& in, int width, int height,
                                      int radius, bool horizontal, MorphOp op) {
    std::vector<std::uint8_t> out(in.size(), 0);
    const int window = 2 * radius + 1;
    const int outer = horizontal ? height : width;
    const int inner = horizontal ? width : height;
    auto idx = [&](int o, int i) {
        return horizontal ? static_cast<size_t>(o) * width + i : static_cast<size_t>(i) * width + o;
    };
    std::vector<int> prefix(static_cast<size_t>(inner) + 1);
    for (int o = 0; o < outer; ++o) {
        prefix[0] = 0;
        for (int i = 0; i < inner; ++i) prefix[i + 1] = prefix[i] + in[idx(o, i)];
        for (int i = 0; i < inner; ++i) {
            const int lo = std::max(i - radius, 0);
            const int hi = std::min(i + radius, inner - 1);
            const int ones = prefix[hi + 1] - prefix[lo];
            const bool hit = op == MorphOp::Dilate ? ones > 0 : ones == window;
            out[idx(o, i)] = hit ? 1 : 0;
        }
    }
    return out;
}

}  // namespace

BinaryMask morph(const BinaryMask& y, MorphOp op, int radius) {
    if (radius < 1) throw Error("morph radius must be >= 1");
    auto tmp = window_pass(y.values(), y.width(), y.height(), radius, /*horizontal=*/true, op);
    auto res = window_pass(tmp, y.width(), y.height(), radius, /*horizontal=*/false, op);
    return BinaryMask::from_values(y.width(), y.height(), std::move(res));
}

}  // namespace camoeval
