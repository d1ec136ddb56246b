#include "camoeval/distance_transform.hpp"

#include <cmath>
#include <limits>

namespace camoeval {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DistanceField distance_transform(const BinaryMask& features) {
    const int w = features.width(), h = features.height();
    if (features.count() == 0) throw EmptyForeground("distance transform needs a feature pixel");

    // Pass 1, per column: squared distance to the nearest feature row in the
    // same column, plus that row.
    std::vector<double> col_d2(static_cast<size_t>(w) * h, kInf);
    std::vector<int> col_src(static_cast<size_t>(w) * h, -1);
    for (int c = 0; c < w; ++c) {
        int last = -1;
        for (int r = 0; r < h; ++r) {
            if (features.at(r, c)) last = r;
            if (last >= 0) {
                const double d = static_cast<double>(r - last);
                col_d2[static_cast<size_t>(r) * w + c] = d * d;
                col_src[static_cast<size_t>(r) * w + c] = last;
            }
        }
        last = -1;
        for (int r = h - 1; r >= 0; --r) {
            if (features.at(r, c)) last = r;
            if (last >= 0) {
                const double d = static_cast<double>(last - r);
                const size_t i = static_cast<size_t>(r) * w + c;
                if (d * d < col_d2[i]) {
                    col_d2[i] = d * d;
                    col_src[i] = last;
                }
            }
        }
    }

    // Pass 2, per row: lower envelope of the parabolas (c - c')^2 + f(c').
    DistanceField out;
    out.width = w;
    out.height = h;
    out.dist.resize(static_cast<size_t>(w) * h);
    out.nearest.resize(static_cast<size_t>(w) * h);

    std::vector<int> v(static_cast<size_t>(w));       // parabola anchors
    std::vector<double> z(static_cast<size_t>(w) + 1);  // envelope breakpoints
    for (int r = 0; r < h; ++r) {
        const double* f = &col_d2[static_cast<size_t>(r) * w];
        int k = -1;
        for (int q = 0; q < w; ++q) {
            if (f[q] == kInf) continue;  // column without any feature
            double s;
            while (true) {
                if (k < 0) {
                    s = -kInf;
                    break;
                }
                const int p = v[k];
                s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
                    (2.0 * (q - p));
                if (s > z[k])
                    break;
                --k;
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = kInf;
        }
        int j = 0;
        for (int c = 0; c < w; ++c) {
            while (z[j + 1] < static_cast<double>(c)) ++j;
            const int p = v[j];
            const double d2 = (static_cast<double>(c) - p) * (static_cast<double>(c) - p) + f[p];
            const size_t i = static_cast<size_t>(r) * w + c;
            out.dist[i] = std::sqrt(d2);
            out.nearest[i] = {col_src[static_cast<size_t>(r) * w + p], p};
        }
    }
    return out;
}

}  // namespace camoeval
