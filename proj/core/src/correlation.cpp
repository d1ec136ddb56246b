#include "camoeval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace camoeval {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kRegularizer = 1e-6;

// Precomputed inverse and normalization constant for repeated density
// evaluation. pixel_correlation and build_kernel share this path so the
// kernel weights equal the pointwise densities bit for bit.
struct Density {
    double inv_rr, inv_rc, inv_cc, norm;

    explicit Density(const Sym2& s) {
        const double det = s.det();
        if (!(det > 0.0) || !(s.rr > 0.0))
            throw DegenerateCovariance("covariance is not positive definite");
        inv_rr = s.cc / det;
        inv_rc = -s.rc / det;
        inv_cc = s.rr / det;
        norm = 1.0 / (kTwoPi * std::sqrt(det));
    }

    double operator()(double dr, double dc) const {
        const double q = dr * (inv_rr * dr + inv_rc * dc) + dc * (inv_rc * dr + inv_cc * dc);
        return norm * std::exp(-0.5 * q);
    }
};

}  // namespace

std::pair<double, double> Sym2::eigenvalues() const {
    const double mid = 0.5 * (rr + cc);
    const double d = std::hypot(0.5 * (rr - cc), rc);
    return {mid - d, mid + d};
}

ShapeCovariance estimate_covariance(std::span<const PixelCoord> fg) {
    if (fg.empty()) throw EmptyForeground("cannot estimate covariance of an empty foreground");
    const double n = static_cast<double>(fg.size());
    double mr = 0.0, mc = 0.0;
    for (const auto& p : fg) {
        mr += p.row;
        mc += p.col;
    }
    mr /= n;
    mc /= n;
    double srr = 0.0, src = 0.0, scc = 0.0;
    for (const auto& p : fg) {
        const double dr = p.row - mr;
        const double dc = p.col - mc;
        srr += dr * dr;
        src += dr * dc;
        scc += dc * dc;
    }
    const double denom = std::max<double>(n - 1.0, 1.0);
    ShapeCovariance cov;
    cov.sigma = {srr / denom + kRegularizer, src / denom, scc / denom + kRegularizer};
    cov.mean_row = mr;
    cov.mean_col = mc;
    return cov;
}

NormalizedCovariance normalize_covariance(const ShapeCovariance& cov, double alpha) {
    const double tr = cov.sigma.trace();
    if (!(tr > 0.0)) throw DegenerateCovariance("covariance trace must be positive");
    const double scale = alpha * alpha / tr;
    return {{cov.sigma.rr * scale, cov.sigma.rc * scale, cov.sigma.cc * scale}, alpha};
}

double pixel_correlation(PixelCoord m, PixelCoord n, const NormalizedCovariance& cov) {
    const Density d(cov.sigma_hat);
    return d(static_cast<double>(n.row - m.row), static_cast<double>(n.col - m.col));
}

GaussianKernel build_kernel(const NormalizedCovariance& cov, int max_half_extent) {
    const Density density(cov.sigma_hat);
    const double lambda_max = cov.sigma_hat.eigenvalues().second;
    const int half = static_cast<int>(std::ceil(3.0 * std::sqrt(lambda_max)));
    if (max_half_extent > 0 && half > max_half_extent)
        throw KernelTooLarge("kernel half extent " + std::to_string(half) + " exceeds limit " +
                             std::to_string(max_half_extent));

    GaussianKernel k;
    k.half_rows_ = half;
    k.half_cols_ = half;
    k.source_ = cov;
    k.weights_.resize(static_cast<size_t>(k.rows()) * k.cols());
    double sum = 0.0;
    size_t i = 0;
    for (int dr = -half; dr <= half; ++dr)
        for (int dc = -half; dc <= half; ++dc) {
            const double w = density(dr, dc);
            k.weights_[i++] = w;
            sum += w;
        }
    // Clamp down only; the mass never gets renormalized upward, so the
    // forward/reverse terms stay provably <= 1.
    while (sum > 1.0) {
        const double scale = 1.0 / sum;
        sum = 0.0;
        for (double& w : k.weights_) {
            w *= scale;
            sum += w;
        }
    }
    k.sum_ = sum;
    return k;
}

GrayMap convolve(const GrayMap& map, const GaussianKernel& kernel) {
    const int w = map.width(), h = map.height();
    const int hr = kernel.half_rows(), hc = kernel.half_cols();
    std::vector<double> out(static_cast<size_t>(w) * h, 0.0);
    const auto& in = map.values();
    // Scatter from nonzero source pixels; masks and sparse maps dominate the
    // workload and this skips their zero regions entirely. The kernel is
    // symmetric under offset negation, so this equals the gather form.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double v = in[static_cast<size_t>(r) * w + c];
            if (v == 0.0) continue;
            const int r0 = std::max(r - hr, 0), r1 = std::min(r + hr, h - 1);
            const int c0 = std::max(c - hc, 0), c1 = std::min(c + hc, w - 1);
            for (int rr = r0; rr <= r1; ++rr) {
                const double* krow = &kernel.weights()[static_cast<size_t>(rr - r + hr) * kernel.cols()];
                double* orow = &out[static_cast<size_t>(rr) * w];
                for (int cc = c0; cc <= c1; ++cc) orow[cc] += v * krow[cc - c + hc];
            }
        }
    }
    // Accumulated float dust can land a hair above the kernel mass; clamp.
    for (double& v : out) v = std::min(v, 1.0);
    return GrayMap::from_values(w, h, std::move(out));
}

}  // namespace camoeval
