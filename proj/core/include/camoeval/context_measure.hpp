#pragma once

#include "camoeval/camo_map.hpp"
#include "camoeval/correlation.hpp"
#include "camoeval/raster.hpp"

namespace camoeval {

/// Parameters of the generic measure. beta balances the forward term against
/// the reverse term; beta > 1 emphasizes the reverse (recall-like) side.
struct CmParams {
    double alpha = 6.0;
    double beta = 1.0;
};

/// Default beta for the camouflage-weighted variant.
inline constexpr double kCamoBeta = 1.2;

/// Intermediate products of one evaluation: the per-pixel forward and reverse
/// fields plus their normalized means.
struct LoopTerms {
    GrayMap forward_map;
    GrayMap reverse_map;
    double f_m = 0.0;
    double r_m = 0.0;
};

/// Forward inference field F = X .* (K conv Y). Entries lie in [0, X(p)].
GrayMap forward_inference(const GrayMap& x, const BinaryMask& y, const GaussianKernel& k);

/// Exact reverse field R(X|q) = 1 - prod_i (1 - X(p_i) * P_Y(p_i, q)) over all
/// predicted-foreground pixels, for q in the GT foreground; zero elsewhere.
/// O(|X_f| * |Y_f|) -- this is the oracle route, not the production one.
GrayMap reverse_exact(const GrayMap& x, const BinaryMask& y, const NormalizedCovariance& cov);

/// Approximated reverse field R = e/(e-1) * Y .* (1 - exp(-(K conv X))).
GrayMap reverse_deduction(const GrayMap& x, const BinaryMask& y, const GaussianKernel& k);

/// Runs the full loop (covariance -> kernel -> forward/reverse) for one pair.
LoopTerms compute_loop_terms(const GrayMap& x, const BinaryMask& y, const CmParams& params);

/// Generic score: harmonic combination of F_m = |F|/|X| and R_m = |R|/|Y|.
/// Returns 0 for an empty prediction; throws EmptyGroundTruth for an empty Y.
double context_measure(const GrayMap& x, const BinaryMask& y, const CmParams& params = {});

/// Camouflage-weighted score: the reverse term is reweighted by Y + D where D
/// is the per-pixel camouflage degree (zero off the GT foreground).
double context_measure_camo(const GrayMap& x, const BinaryMask& y, const CamoMap& camo_degree,
                            const CmParams& params = {6.0, kCamoBeta});

}  // namespace camoeval
