#include "camoeval/metastudy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "camoeval/baselines.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace camoeval {

std::string_view protocol_name(Protocol p) {
    switch (p) {
        case Protocol::MM1: return "mm1";
        case Protocol::MM2: return "mm2";
        case Protocol::MM3: return "mm3";
        case Protocol::MM4Erode: return "mm4-erode";
        case Protocol::MM4Dilate: return "mm4-dilate";
    }
    return "?";
}

namespace {

// Average ranks (1-based, ties get the mean of their positions).
std::vector<double> average_ranks(std::span<const double> values) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double score_view(const Metric& metric, const GrayMap& fm, const BinaryMask& gt,
                  const RgbImage* image) {
    if (metric.needs_image && image == nullptr)
        throw MissingImage("metric '" + metric.name + "' needs the RGB image");
    return metric.score(ScoredView{fm, gt, metric.needs_image ? image : nullptr});
}

// F1 (beta^2 = 1) on the adaptively binarized FM; the MM2/MM3 quality gate.
bool qualifies(const SamplePair& pair) {
    try {
        return f_beta(binarize_adaptive(pair.fm), pair.gt, 1.0) >= 0.6;
    } catch (const EmptyGroundTruth&) {
        return false;
    }
}

}  // namespace

double spearman_theta(std::span<const double> metric_ranks, std::span<const double> human_ranks) {
    if (metric_ranks.size() != human_ranks.size())
        throw LengthMismatch("rank lists differ in length");
    if (metric_ranks.size() < 2) throw LengthMismatch("need at least two ranked items");

    const auto ra = average_ranks(metric_ranks);
    const auto rb = average_ranks(human_ranks);
    const double n = static_cast<double>(ra.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double num = 0.0, va = 0.0, vb = 0.0;
    for (size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) throw DegenerateRanks("constant rank list");
    const double rho = num / std::sqrt(va * vb);
    return 1.0 - rho;
}

std::vector<size_t> derangement(size_t n, std::uint64_t seed) {
    if (n < 2) throw Error("derangement needs n >= 2");
    detail::Rng rng(seed);
    std::vector<size_t> perm(n);
    while (true) {
        std::iota(perm.begin(), perm.end(), size_t{0});
        for (size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.bounded(i + 1)]);
        bool fixed_point = false;
        for (size_t i = 0; i < n; ++i)
            if (perm[i] == i) {
                fixed_point = true;
                break;
            }
        if (!fixed_point) return perm;
    }
}

GrayMap inject_noise(const GrayMap& fm, const BinaryMask& gt, std::uint64_t seed,
                     bool require_low_prediction) {
    require_same_dims(fm, gt);
    std::vector<size_t> candidates;
    for (size_t i = 0; i < gt.values().size(); ++i) {
        if (gt.values()[i]) continue;
        if (require_low_prediction && fm.values()[i] >= 0.1) continue;
        candidates.push_back(i);
    }
    if (candidates.empty()) throw EmptyCandidateRegion("no background pixel to perturb");

    const size_t budget = static_cast<size_t>(0.01 * fm.pixel_count());
    const size_t take = std::min(budget, candidates.size());

    detail::Rng rng(seed);
    std::vector<double> values = fm.values();
    for (size_t i = 0; i < take; ++i) {
        const size_t j = i + rng.bounded(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
        const double eps = 0.2 * rng.gaussian();
        values[candidates[i]] = std::clamp(values[candidates[i]] + eps, 0.0, 1.0);
    }
    return GrayMap::from_values(fm.width(), fm.height(), std::move(values));
}

BinaryMask resize_nearest(const BinaryMask& mask, int width, int height) {
    if (mask.width() == width && mask.height() == height) return mask;
    BinaryMask out(width, height);
    for (int r = 0; r < height; ++r) {
        const int sr = static_cast<int>(static_cast<long long>(r) * mask.height() / height);
        for (int c = 0; c < width; ++c) {
            const int sc = static_cast<int>(static_cast<long long>(c) * mask.width() / width);
            out.set(r, c, mask.at(sr, sc));
        }
    }
    return out;
}

MetaResult mm1_run(std::span<const RankedGroup> groups, const Metric& metric,
                   const RunOptions& opt) {
    struct GroupOutcome {
        double theta = 0.0;
        bool degenerate = false;
    };
    std::vector<GroupOutcome> outcomes(groups.size());

    detail::parallel_for(groups.size(), opt.threads, [&](size_t g) {
        const RankedGroup& group = groups[g];
        if (group.fms.size() != group.human_rank.size() || group.fms.size() < 2)
            throw Error("ranked group '" + group.id + "' is malformed");
        std::vector<double> scores;
        scores.reserve(group.fms.size());
        const RgbImage* image = group.image ? &*group.image : nullptr;
        for (const GrayMap& fm : group.fms) scores.push_back(score_view(metric, fm, group.gt, image));

        // Higher score means better (lower) rank.
        std::vector<double> negated(scores.size());
        std::transform(scores.begin(), scores.end(), negated.begin(), [](double s) { return -s; });
        std::vector<double> human(group.human_rank.begin(), group.human_rank.end());
        try {
            outcomes[g].theta = spearman_theta(average_ranks(negated), human);
        } catch (const DegenerateRanks&) {
            outcomes[g].degenerate = true;
        }
    });

    MetaResult res{metric.name, Protocol::MM1, 0.0, 0, 0, opt.seed};
    double acc = 0.0;
    for (const auto& o : outcomes) {
        if (o.degenerate) {
            ++res.excluded;
        } else {
            acc += o.theta;
            ++res.sample_count;
        }
    }
    res.statistic = res.sample_count > 0 ? acc / res.sample_count : 0.0;
    return res;
}

MetaResult mm2_run(std::span<const SamplePair> pairs, const Metric& metric,
                   const RunOptions& opt) {
    std::vector<size_t> qualified;
    for (size_t i = 0; i < pairs.size(); ++i)
        if (qualifies(pairs[i])) qualified.push_back(i);
    if (qualified.size() < 2)
        throw TooFewQualifiedSamples("MM2 needs at least two pairs with F1 >= 0.6, got " +
                                     std::to_string(qualified.size()));

    const auto perm = derangement(qualified.size(), opt.seed);

    enum class Outcome { Ok, Error, Skipped };
    struct PairOutcome {
        Outcome kind = Outcome::Skipped;
        bool is_error = false;
    };
    std::vector<PairOutcome> outcomes(qualified.size());

    detail::parallel_for(qualified.size(), opt.threads, [&](size_t k) {
        const SamplePair& pair = pairs[qualified[k]];
        const SamplePair& donor = pairs[qualified[perm[k]]];
        const RgbImage* image = pair.image ? &*pair.image : nullptr;
        const double with_true = score_view(metric, pair.fm, pair.gt, image);
        try {
            const BinaryMask pseudo = resize_nearest(donor.gt, pair.fm.width(), pair.fm.height());
            const double with_pseudo = score_view(metric, pair.fm, pseudo, image);
            outcomes[k] = {Outcome::Ok, with_pseudo > with_true};
        } catch (const Error&) {
            // A pseudo-GT the metric cannot digest (e.g. empty after resize)
            // cannot outscore the correct one; report it as excluded.
            outcomes[k] = {Outcome::Skipped, false};
        }
    });

    MetaResult res{metric.name, Protocol::MM2, 0.0, 0, 0, opt.seed};
    int errors = 0;
    for (const auto& o : outcomes) {
        if (o.kind == Outcome::Ok) {
            ++res.sample_count;
            errors += o.is_error ? 1 : 0;
        } else {
            ++res.excluded;
        }
    }
    res.statistic = res.sample_count > 0 ? static_cast<double>(errors) / res.sample_count : 0.0;
    return res;
}

MetaResult mm3_run(std::span<const SamplePair> pairs, const Metric& metric,
                   const RunOptions& opt) {
    std::vector<size_t> qualified;
    for (size_t i = 0; i < pairs.size(); ++i)
        if (qualifies(pairs[i])) qualified.push_back(i);
    if (qualified.empty()) throw TooFewQualifiedSamples("MM3 found no pair with F1 >= 0.6");

    struct PairOutcome {
        bool counted = false;
        bool is_error = false;
    };
    std::vector<PairOutcome> outcomes(qualified.size());

    detail::parallel_for(qualified.size(), opt.threads, [&](size_t k) {
        const SamplePair& pair = pairs[qualified[k]];
        const RgbImage* image = pair.image ? &*pair.image : nullptr;
        // Split the master seed per input index so parallel and serial runs
        // draw identical noise.
        const std::uint64_t pair_seed = detail::mix_seed(opt.seed, qualified[k]);
        try {
            const GrayMap noisy =
                inject_noise(pair.fm, pair.gt, pair_seed, opt.noise_requires_low_prediction);
            const double original = score_view(metric, pair.fm, pair.gt, image);
            const double perturbed = score_view(metric, noisy, pair.gt, image);
            outcomes[k] = {true, perturbed > original};
        } catch (const EmptyCandidateRegion&) {
            outcomes[k] = {false, false};
        }
    });

    MetaResult res{metric.name, Protocol::MM3, 0.0, 0, 0, opt.seed};
    int errors = 0;
    for (const auto& o : outcomes) {
        if (o.counted) {
            ++res.sample_count;
            errors += o.is_error ? 1 : 0;
        } else {
            ++res.excluded;
        }
    }
    res.statistic = res.sample_count > 0 ? static_cast<double>(errors) / res.sample_count : 0.0;
    return res;
}

MetaResult mm4_run(std::span<const SamplePair> pairs, const Metric& metric, MorphOp op,
                   const RunOptions& opt) {
    struct PairOutcome {
        bool counted = false;
        double delta = 0.0;
    };
    std::vector<PairOutcome> outcomes(pairs.size());

    detail::parallel_for(pairs.size(), opt.threads, [&](size_t i) {
        const SamplePair& pair = pairs[i];
        const BinaryMask perturbed = morph(pair.gt, op, 1);
        if (perturbed.count() == 0) return;  // erosion wiped the object out
        const RgbImage* image = pair.image ? &*pair.image : nullptr;
        const double before = score_view(metric, pair.fm, pair.gt, image);
        const double after = score_view(metric, pair.fm, perturbed, image);
        outcomes[i] = {true, std::abs(after - before)};
    });

    MetaResult res{metric.name, op == MorphOp::Erode ? Protocol::MM4Erode : Protocol::MM4Dilate,
                   0.0, 0, 0, opt.seed};
    double acc = 0.0;
    for (const auto& o : outcomes) {
        if (o.counted) {
            acc += o.delta;
            ++res.sample_count;
        } else {
            ++res.excluded;
        }
    }
    res.statistic = res.sample_count > 0 ? acc / res.sample_count : 0.0;
    return res;
}

}  // namespace camoeval
