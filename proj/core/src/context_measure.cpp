#include "camoeval/context_measure.hpp"

#include <algorithm>
#include <cmath>

namespace camoeval {

namespace {

constexpr double kEulerRescale = 2.718281828459045235360287 / (2.718281828459045235360287 - 1.0);

double harmonic_score(double f_m, double weighted_r, double beta) {
    if (f_m == 0.0 && weighted_r == 0.0) return 0.0;
    const double b2 = beta * beta;
    return (1.0 + b2) * f_m * weighted_r / (b2 * f_m + weighted_r);
}

GaussianKernel kernel_for(const BinaryMask& y, double alpha) {
    const auto fg = foreground_pixels(y);
    if (fg.empty()) throw EmptyGroundTruth("ground truth has no foreground pixel");
    const auto cov = normalize_covariance(estimate_covariance(fg), alpha);
    return build_kernel(cov, 2 * std::max(y.width(), y.height()));
}

}  // namespace

GrayMap forward_inference(const GrayMap& x, const BinaryMask& y, const GaussianKernel& k) {
    require_same_dims(x, y);
    GrayMap smoothed = convolve(y.to_gray(), k);
    std::vector<double> f(x.values().size());
    for (size_t i = 0; i < f.size(); ++i) f[i] = x.values()[i] * smoothed.values()[i];
    return GrayMap::from_values(x.width(), x.height(), std::move(f));
}

GrayMap reverse_exact(const GrayMap& x, const BinaryMask& y, const NormalizedCovariance& cov) {
    require_same_dims(x, y);
    std::vector<PixelCoord> xf;
    for (int r = 0; r < x.height(); ++r)
        for (int c = 0; c < x.width(); ++c)
            if (x.at(r, c) > 0.0) xf.push_back({r, c});

    std::vector<double> out(x.values().size(), 0.0);
    for (int r = 0; r < y.height(); ++r) {
        for (int c = 0; c < y.width(); ++c) {
            if (!y.at(r, c)) continue;
            const PixelCoord q{r, c};
            double prod = 1.0;
            for (const auto& p : xf) prod *= 1.0 - x.at(p.row, p.col) * pixel_correlation(p, q, cov);
            out[static_cast<size_t>(r) * x.width() + c] = std::clamp(1.0 - prod, 0.0, 1.0);
        }
    }
    return GrayMap::from_values(x.width(), x.height(), std::move(out));
}

GrayMap reverse_deduction(const GrayMap& x, const BinaryMask& y, const GaussianKernel& k) {
    require_same_dims(x, y);
    GrayMap smoothed = convolve(x, k);
    std::vector<double> out(x.values().size(), 0.0);
    for (size_t i = 0; i < out.size(); ++i) {
        if (y.values()[i] == 0) continue;  // reverse field lives on the GT foreground only
        const double v = kEulerRescale * (1.0 - std::exp(-smoothed.values()[i]));
        out[i] = std::clamp(v, 0.0, 1.0);
    }
    return GrayMap::from_values(x.width(), x.height(), std::move(out));
}

LoopTerms compute_loop_terms(const GrayMap& x, const BinaryMask& y, const CmParams& params) {
    require_same_dims(x, y);
    const GaussianKernel k = kernel_for(y, params.alpha);
    LoopTerms terms{forward_inference(x, y, k), reverse_deduction(x, y, k)};
    const double x_mass = x.l1();
    const double y_mass = static_cast<double>(y.count());
    terms.f_m = x_mass > 0.0 ? terms.forward_map.l1() / x_mass : 0.0;
    terms.r_m = terms.reverse_map.l1() / y_mass;
    return terms;
}

double context_measure(const GrayMap& x, const BinaryMask& y, const CmParams& params) {
    const LoopTerms terms = compute_loop_terms(x, y, params);
    if (x.l1() == 0.0) return 0.0;  // empty prediction is a valid (bad) output
    return harmonic_score(terms.f_m, terms.r_m, params.beta);
}

double context_measure_camo(const GrayMap& x, const BinaryMask& y, const CamoMap& camo_degree,
                            const CmParams& params) {
    require_same_dims(x, y);
    require_same_dims(x, camo_degree.map());
    for (size_t i = 0; i < y.values().size(); ++i)
        if (y.values()[i] == 0 && camo_degree.map().values()[i] != 0.0)
            throw Error("camouflage degree must be zero off the GT foreground");

    const LoopTerms terms = compute_loop_terms(x, y, params);
    if (x.l1() == 0.0) return 0.0;

    // R_w = |R .* (Y + D)| / |Y + D|; D vanishes off the foreground, so both
    // sums run over the GT foreground with weights 1 + D.
    double num = 0.0, den = 0.0;
    const auto& r = terms.reverse_map.values();
    const auto& d = camo_degree.map().values();
    const auto& mask = y.values();
    for (size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] == 0) continue;
        const double wgt = 1.0 + d[i];
        num += r[i] * wgt;
        den += wgt;
    }
    const double r_w = num / den;
    return harmonic_score(terms.f_m, r_w, params.beta);
}

}  // namespace camoeval
