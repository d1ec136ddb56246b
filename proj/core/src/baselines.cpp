#include "camoeval/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "camoeval/distance_transform.hpp"

namespace camoeval {

namespace {

constexpr double kStabilizer = 1e-12;

struct Confusion {
    double tp = 0, fp = 0, fn = 0, tn = 0;
};

Confusion confusion(const BinaryMask& x, const BinaryMask& y) {
    Confusion c;
    const auto& xv = x.values();
    const auto& yv = y.values();
    for (size_t i = 0; i < xv.size(); ++i) {
        if (yv[i]) {
            xv[i] ? ++c.tp : ++c.fn;
        } else {
            xv[i] ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

}  // namespace

double mae(const GrayMap& x, const BinaryMask& y) {
    require_same_dims(x, y);
    double acc = 0.0;
    for (size_t i = 0; i < x.values().size(); ++i)
        acc += std::abs(static_cast<double>(y.values()[i]) - x.values()[i]);
    return acc / static_cast<double>(x.pixel_count());
}

double iou(const BinaryMask& x, const BinaryMask& y) {
    require_same_dims(x, y);
    const Confusion c = confusion(x, y);
    const double uni = c.tp + c.fp + c.fn;
    if (uni == 0.0) throw BothEmpty("IoU undefined when both masks are empty");
    return c.tp / uni;
}

double f_beta(const BinaryMask& x, const BinaryMask& y, double beta_sq) {
    require_same_dims(x, y);
    if (y.count() == 0) throw EmptyGroundTruth("F-measure needs a non-empty ground truth");
    const Confusion c = confusion(x, y);
    if (c.tp == 0.0) return 0.0;
    const double precision = c.tp / (c.tp + c.fp);
    const double recall = c.tp / (c.tp + c.fn);
    return (1.0 + beta_sq) * precision * recall / (beta_sq * precision + recall);
}

double f_beta_w(const GrayMap& x, const BinaryMask& y, const BaselineParams& params) {
    require_same_dims(x, y);
    const int w = x.width(), h = x.height();
    if (y.count() == 0) throw EmptyGroundTruth("weighted F-measure needs a non-empty ground truth");

    const size_t n = x.values().size();
    std::vector<double> err(n);
    for (size_t i = 0; i < n; ++i)
        err[i] = std::abs(static_cast<double>(y.values()[i]) - x.values()[i]);

    // Background errors take the value at their nearest foreground pixel
    // before the dependency filter, so the foreground edge is handled cleanly.
    const DistanceField field = distance_transform(y);
    std::vector<double> pulled = err;
    for (size_t i = 0; i < n; ++i) {
        if (y.values()[i]) continue;
        const PixelCoord p = field.nearest[i];
        pulled[i] = err[static_cast<size_t>(p.row) * w + p.col];
    }

    // Dependency weighting: Gaussian filter of the pulled errors.
    const int half = params.dep_window / 2;
    std::vector<double> g(static_cast<size_t>(params.dep_window) * params.dep_window);
    double gsum = 0.0;
    for (int dr = -half; dr <= half; ++dr)
        for (int dc = -half; dc <= half; ++dc) {
            const double v =
                std::exp(-(dr * dr + dc * dc) / (2.0 * params.dep_sigma * params.dep_sigma));
            g[static_cast<size_t>(dr + half) * params.dep_window + (dc + half)] = v;
            gsum += v;
        }
    for (double& v : g) v /= gsum;

    std::vector<double> weighted(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int dr = -half; dr <= half; ++dr) {
                const int rr = r + dr;
                if (rr < 0 || rr >= h) continue;
                for (int dc = -half; dc <= half; ++dc) {
                    const int cc = c + dc;
                    if (cc < 0 || cc >= w) continue;
                    acc += g[static_cast<size_t>(dr + half) * params.dep_window + (dc + half)] *
                           pulled[static_cast<size_t>(rr) * w + cc];
                }
            }
            weighted[static_cast<size_t>(r) * w + c] = acc;
        }
    }

    // E^w = min{E, E*A} (the min acting on the foreground) times the
    // importance B: 1 on the foreground, distance decay on the background.
    double sum_fg_ew = 0.0, sum_bg_ew = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double ew;
        if (y.values()[i]) {
            ew = std::min(err[i], weighted[i]);
        } else {
            const double importance = 2.0 - std::exp(params.imp_alpha * field.dist[i]);
            ew = err[i] * importance;
        }
        (y.values()[i] ? sum_fg_ew : sum_bg_ew) += ew;
    }

    const double fg_total = static_cast<double>(y.count());
    const double tp_w = fg_total - sum_fg_ew;
    const double fp_w = sum_bg_ew;
    if (tp_w <= 0.0) return 0.0;
    const double recall = tp_w / fg_total;
    const double precision = tp_w / (tp_w + fp_w);
    const double b2 = params.beta_w * params.beta_w;
    return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

namespace {

struct Region {
    int r0, r1, c0, c1;  // half-open [r0,r1) x [c0,c1)
    bool empty() const { return r0 >= r1 || c0 >= c1; }
};

// SSIM-style similarity of one region, matching the S-measure formulation:
// 4*mx*my*cov / ((mx^2+my^2) * (vx+vy)), with the documented limits.
double region_ssim(const GrayMap& x, const BinaryMask& y, const Region& reg) {
    const double n = static_cast<double>((reg.r1 - reg.r0)) * (reg.c1 - reg.c0);
    double sx = 0.0, sy = 0.0;
    for (int r = reg.r0; r < reg.r1; ++r)
        for (int c = reg.c0; c < reg.c1; ++c) {
            sx += x.at(r, c);
            sy += y.at(r, c) ? 1.0 : 0.0;
        }
    const double mx = sx / n, my = sy / n;
    double vx = 0.0, vy = 0.0, cov = 0.0;
    for (int r = reg.r0; r < reg.r1; ++r)
        for (int c = reg.c0; c < reg.c1; ++c) {
            const double dx = x.at(r, c) - mx;
            const double dy = (y.at(r, c) ? 1.0 : 0.0) - my;
            vx += dx * dx;
            vy += dy * dy;
            cov += dx * dy;
        }
    const double denom = n - 1.0 + kStabilizer;
    vx /= denom;
    vy /= denom;
    cov /= denom;

    const double num = 4.0 * mx * my * cov;
    const double den = (mx * mx + my * my) * (vx + vy);
    if (num != 0.0) return num / (den + kStabilizer);
    return den == 0.0 ? 1.0 : 0.0;
}

// Object-level similarity of one side: 2*mean / (mean^2 + 1 + 2*lambda*sigma),
// with mean/sigma taken over the region's prediction values.
double object_score(const std::vector<double>& vals, double lambda_obj) {
    if (vals.empty()) return 0.0;
    const double n = static_cast<double>(vals.size());
    double m = 0.0;
    for (double v : vals) m += v;
    m /= n;
    double var = 0.0;
    for (double v : vals) var += (v - m) * (v - m);
    const double sigma = vals.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    return 2.0 * m / (m * m + 1.0 + 2.0 * lambda_obj * sigma + kStabilizer);
}

}  // namespace

double s_measure(const GrayMap& x, const BinaryMask& y, double alpha_s,
                 const BaselineParams& params) {
    require_same_dims(x, y);
    const int w = x.width(), h = x.height();
    const int fg_total = y.count();
    if (fg_total == 0) return 1.0 - x.mean();
    if (fg_total == x.pixel_count()) return x.mean();

    // Object term.
    std::vector<double> fg_vals, bg_vals;
    fg_vals.reserve(static_cast<size_t>(fg_total));
    bg_vals.reserve(static_cast<size_t>(x.pixel_count() - fg_total));
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            (y.at(r, c) ? fg_vals : bg_vals).push_back(y.at(r, c) ? x.at(r, c) : 1.0 - x.at(r, c));
    const double y_mean = static_cast<double>(fg_total) / x.pixel_count();
    const double s_o = y_mean * object_score(fg_vals, params.lambda_obj) +
                       (1.0 - y_mean) * object_score(bg_vals, params.lambda_obj);

    // Region term: quadrants split at the GT centroid. The boundary sits
    // right after the centroid's own column/row (floor), which mirrors
    // exactly under horizontal/vertical flips for fractional centroids.
    double mr = 0.0, mc = 0.0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (y.at(r, c)) {
                mr += r;
                mc += c;
            }
    const int cr = static_cast<int>(std::floor(mr / fg_total)) + 1;
    const int cc = static_cast<int>(std::floor(mc / fg_total)) + 1;

    const Region quads[4] = {
        {0, cr, 0, cc},
        {0, cr, cc, w},
        {cr, h, 0, cc},
        {cr, h, cc, w},
    };
    double s_r = 0.0;
    for (const Region& q : quads) {
        if (q.empty()) continue;
        int fg_k = 0;
        for (int r = q.r0; r < q.r1; ++r)
            for (int c = q.c0; c < q.c1; ++c)
                if (y.at(r, c)) ++fg_k;
        if (fg_k == 0) continue;
        const double weight = static_cast<double>(fg_k) / fg_total;
        s_r += weight * region_ssim(x, y, q);
    }

    return std::max(alpha_s * s_o + (1.0 - alpha_s) * s_r, 0.0);
}

double e_measure(const BinaryMask& x, const BinaryMask& y) {
    require_same_dims(x, y);
    const double n = static_cast<double>(x.pixel_count());
    const int y_count = y.count();
    // Constant GT: the alignment field degenerates, use the area limits.
    if (y_count == 0) return 1.0 - x.count() / n;
    if (y_count == static_cast<int>(n)) return x.count() / n;

    const double mx = x.count() / n;
    const double my = y_count / n;
    double acc = 0.0;
    for (size_t i = 0; i < x.values().size(); ++i) {
        const double px = static_cast<double>(x.values()[i]) - mx;
        const double py = static_cast<double>(y.values()[i]) - my;
        const double xi = 2.0 * px * py / (px * px + py * py + kStabilizer);
        acc += (1.0 + xi) * (1.0 + xi);
    }
    return acc / (4.0 * n);
}

}  // namespace camoeval
