#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camoeval/color.hpp"
#include "camoeval/raster.hpp"

namespace camoeval {

/// One (FM, GT) experimental unit. The RGB image is only needed by the
/// camouflage-weighted metric.
struct SamplePair {
    std::string id;
    GrayMap fm;
    BinaryMask gt;
    std::optional<RgbImage> image;
};

/// One human-ranked group: three predictions of the same scene plus the
/// consensus ranking (1 = best).
struct RankedGroup {
    std::string id;
    std::optional<RgbImage> image;
    BinaryMask gt;
    std::vector<GrayMap> fms;
    std::vector<int> human_rank;
};

enum class Protocol { MM1, MM2, MM3, MM4Erode, MM4Dilate };
std::string_view protocol_name(Protocol p);

/// Aggregated outcome of one protocol for one metric. The statistic is the
/// mean theta for MM1, an error rate for MM2/MM3, and the mean absolute score
/// variation for MM4.
struct MetaResult {
    std::string metric;
    Protocol protocol{};
    double statistic = 0.0;
    int sample_count = 0;
    int excluded = 0;
    std::uint64_t seed = 0;
};

/// A metric under study: a name, whether it needs the RGB image, and the
/// scoring function itself (higher = better).
struct ScoredView {
    const GrayMap& fm;
    const BinaryMask& gt;
    const RgbImage* image = nullptr;
};
struct Metric {
    std::string name;
    bool needs_image = false;
    std::function<double(const ScoredView&)> score;
};

struct RunOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// MM3 candidate region: false = all GT background; true = GT background
    /// restricted to weakly predicted pixels (X < 0.1).
    bool noise_requires_low_prediction = false;
};

/// theta = 1 - Spearman rho with average-rank tie handling. Inputs are rank
/// (or score) lists of equal length >= 2. Throws LengthMismatch /
/// DegenerateRanks.
double spearman_theta(std::span<const double> metric_ranks, std::span<const double> human_ranks);

/// Fixed-point-free permutation of {0..n-1}, drawn by seeded rejection
/// sampling. Throws Error for n < 2.
std::vector<size_t> derangement(size_t n, std::uint64_t seed);

/// Adds truncated Gaussian noise (sigma = 0.2) to floor(1% of all pixels)
/// distinct pixels drawn from the candidate region; results are clamped to
/// [0,1]. Throws EmptyCandidateRegion.
GrayMap inject_noise(const GrayMap& fm, const BinaryMask& gt, std::uint64_t seed,
                     bool require_low_prediction = false);

/// Nearest-neighbor resize (keeps the mask binary).
BinaryMask resize_nearest(const BinaryMask& mask, int width, int height);

/// MM1: mean rank-consistency theta against the human rankings. Groups where
/// the metric produces a degenerate (constant) ranking are excluded and
/// counted.
MetaResult mm1_run(std::span<const RankedGroup> groups, const Metric& metric,
                   const RunOptions& opt = {});

/// MM2: ground-truth switch. Qualified pairs (F1 >= 0.6 on the adaptively
/// binarized FM) are assigned deranged pseudo-GTs; the statistic is the
/// fraction of pairs where the pseudo-GT outscores the correct GT.
MetaResult mm2_run(std::span<const SamplePair> pairs, const Metric& metric, const RunOptions& opt);

/// MM3: noise sensitivity. The statistic is the fraction of qualified pairs
/// where the noisy FM outscores the original.
MetaResult mm3_run(std::span<const SamplePair> pairs, const Metric& metric, const RunOptions& opt);

/// MM4: boundary stability. Mean |score(FM, morph(GT)) - score(FM, GT)| under
/// a radius-1 erosion or dilation; pairs whose eroded GT is empty are
/// excluded and counted.
MetaResult mm4_run(std::span<const SamplePair> pairs, const Metric& metric, MorphOp op,
                   const RunOptions& opt = {});

}  // namespace camoeval
