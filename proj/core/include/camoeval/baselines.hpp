#pragma once

#include <cmath>

#include "camoeval/raster.hpp"

namespace camoeval {

/// Knobs of the comparison metrics. Defaults follow each metric's original
/// release; regression vectors in the test suite pin them.
struct BaselineParams {
    double beta_sq_f = 0.3;   // F-measure beta^2
    double beta_w = 1.0;      // weighted F-measure beta
    double alpha_s = 0.5;     // S-measure object/region mix
    double lambda_obj = 0.5;  // S-measure object-term sigma coefficient
    double dep_sigma = 5.0;   // weighted-F dependency Gaussian sigma
    int dep_window = 7;       // weighted-F dependency window side
    double imp_alpha = std::log(0.5) / 5.0;  // weighted-F importance decay
};

/// Mean absolute error, mean |Y - X|.
double mae(const GrayMap& x, const BinaryMask& y);

/// Intersection over union of two binary masks. Throws BothEmpty when both
/// masks are empty.
double iou(const BinaryMask& x, const BinaryMask& y);

/// beta-weighted harmonic mean of precision and recall; 0 when TP == 0.
/// Throws EmptyGroundTruth.
double f_beta(const BinaryMask& x, const BinaryMask& y, double beta_sq = 0.3);

/// Weighted F-measure: errors are reweighted by foreground dependency (a
/// Gaussian over errors pulled to the nearest foreground pixel) and by a
/// distance-decay importance before precision/recall. Throws EmptyGroundTruth.
double f_beta_w(const GrayMap& x, const BinaryMask& y, const BaselineParams& params = {});

/// Structure measure: alpha * S_object + (1-alpha) * S_region, quadrants split
/// at the GT centroid with foreground-proportional weights. Degenerate all-
/// zero / all-one GT falls back to 1-mean(X) / mean(X).
double s_measure(const GrayMap& x, const BinaryMask& y, double alpha_s = 0.5,
                 const BaselineParams& params = {});

/// Enhanced-alignment measure over the bias-matrix alignment field.
double e_measure(const BinaryMask& x, const BinaryMask& y);

}  // namespace camoeval
