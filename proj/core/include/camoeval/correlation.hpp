#pragma once

#include <span>
#include <utility>
#include <vector>

#include "camoeval/raster.hpp"

namespace camoeval {

/// 2x2 symmetric matrix over (row, col) coordinates, in pixel^2 units.
struct Sym2 {
    double rr = 0.0;
    double rc = 0.0;
    double cc = 0.0;

    double trace() const { return rr + cc; }
    double det() const { return rr * cc - rc * rc; }
    /// {smallest, largest} eigenvalue.
    std::pair<double, double> eigenvalues() const;
};

/// Sample covariance of the GT foreground coordinates, with the centroid.
struct ShapeCovariance {
    Sym2 sigma;
    double mean_row = 0.0;
    double mean_col = 0.0;
};

/// Shape covariance rescaled so that trace(sigma_hat) == alpha^2, which keeps
/// pixel correlations comparable across image resolutions.
struct NormalizedCovariance {
    Sym2 sigma_hat;
    double alpha = 0.0;
};

/// Discretized pixel-correlation kernel: the bivariate Gaussian density of the
/// normalized covariance sampled at integer offsets within the 3-sigma box of
/// the largest eigenvalue. If the discrete sum exceeds 1 it is rescaled down
/// to exactly 1, so convolution against [0,1] inputs stays within [0,1].
class GaussianKernel {
public:
    int half_rows() const { return half_rows_; }
    int half_cols() const { return half_cols_; }
    int rows() const { return 2 * half_rows_ + 1; }
    int cols() const { return 2 * half_cols_ + 1; }

    /// Weight at offset (dr, dc), dr in [-half_rows, half_rows].
    double weight(int dr, int dc) const {
        return weights_[static_cast<size_t>(dr + half_rows_) * cols() + (dc + half_cols_)];
    }
    const std::vector<double>& weights() const { return weights_; }
    double sum() const { return sum_; }
    const NormalizedCovariance& source() const { return source_; }

private:
    friend GaussianKernel build_kernel(const NormalizedCovariance&, int);
    GaussianKernel() = default;
    int half_rows_ = 0;
    int half_cols_ = 0;
    std::vector<double> weights_;
    double sum_ = 0.0;
    NormalizedCovariance source_;
};

/// Sample covariance (Bessel, n-1) of the foreground coordinates, regularized
/// by +1e-6*I. A single-pixel foreground degenerates to 1e-6*I.
/// Throws EmptyForeground.
ShapeCovariance estimate_covariance(std::span<const PixelCoord> fg);

/// sigma_hat = (alpha^2 / trace(sigma)) * sigma. Throws DegenerateCovariance
/// if the trace is not positive (unreachable after regularization).
NormalizedCovariance normalize_covariance(const ShapeCovariance& cov, double alpha);

/// Bivariate Gaussian density of the normalized covariance at offset n - m:
/// exp(-0.5 * d^T sigma_hat^-1 d) / (2*pi*sqrt(|sigma_hat|)).
double pixel_correlation(PixelCoord m, PixelCoord n, const NormalizedCovariance& cov);

/// Discretizes the correlation density into a kernel. Half extent is
/// ceil(3*sqrt(largest eigenvalue)) on both axes. If max_half_extent > 0 and
/// the extent exceeds it, throws KernelTooLarge.
GaussianKernel build_kernel(const NormalizedCovariance& cov, int max_half_extent = 0);

/// Cross-correlation of map with the (symmetric) kernel, zero padding outside
/// the frame. Output dims equal input dims; entries stay in [0, kernel sum].
GrayMap convolve(const GrayMap& map, const GaussianKernel& kernel);

}  // namespace camoeval
