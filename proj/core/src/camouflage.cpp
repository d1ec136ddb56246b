#include "camoeval/camouflage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "camoeval/distance_transform.hpp"

namespace camoeval {

namespace {

// Compact k-d tree for the exact / (1+eps)-approximate patch search. Splits
// on the dimension of largest spread; pruning compares the splitting-plane
// distance against best/(1+eps), so exact mode still sees every tied point
// and the lowest-index tie wins regardless of corpus order.
class KdTree {
public:
    KdTree(std::span<const PatchDescriptor> points, size_t dim) : points_(points), dim_(dim) {
        order_.resize(points.size());
        std::iota(order_.begin(), order_.end(), size_t{0});
        nodes_.reserve(2 * points.size() / kLeafSize + 2);
        root_ = build(0, points.size());
    }

    // (squared distance, corpus index)
    std::pair<double, size_t> nearest(std::span<const double> q, double eps) const {
        best_d2_ = std::numeric_limits<double>::infinity();
        best_idx_ = points_.size();
        prune_scale_ = (1.0 + eps) * (1.0 + eps);
        search(root_, q);
        return {best_d2_, best_idx_};
    }

private:
    static constexpr size_t kLeafSize = 12;

    struct Node {
        int left = -1, right = -1;
        size_t begin = 0, end = 0;  // leaf range in order_
        int split_dim = -1;
        double split_val = 0.0;
    };

    int build(size_t begin, size_t end) {
        Node node;
        node.begin = begin;
        node.end = end;
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        if (end - begin <= kLeafSize) return id;

        // dimension of largest spread over this range
        int dim = 0;
        double best_spread = -1.0;
        for (size_t d = 0; d < dim_; ++d) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (size_t i = begin; i < end; ++i) {
                const double v = points_[order_[i]].vector[d];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > best_spread) {
                best_spread = hi - lo;
                dim = static_cast<int>(d);
            }
        }
        if (best_spread <= 0.0) return id;  // all points identical: keep as leaf

        const size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](size_t a, size_t b) {
                             return points_[a].vector[dim] < points_[b].vector[dim];
                         });
        const double split = points_[order_[mid]].vector[dim];
        nodes_[id].split_dim = dim;
        nodes_[id].split_val = split;
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    void scan_leaf(const Node& node, std::span<const double> q) const {
        for (size_t i = node.begin; i < node.end; ++i) {
            const size_t idx = order_[i];
            const auto& v = points_[idx].vector;
            double d2 = 0.0;
            for (size_t d = 0; d < dim_; ++d) {
                const double diff = v[d] - q[d];
                d2 += diff * diff;
                if (d2 > best_d2_) break;
            }
            if (d2 < best_d2_ || (d2 == best_d2_ && idx < best_idx_)) {
                best_d2_ = d2;
                best_idx_ = idx;
            }
        }
    }

    void search(int id, std::span<const double> q) const {
        const Node& node = nodes_[id];
        if (node.split_dim < 0) {
            scan_leaf(node, q);
            return;
        }
        const double diff = q[node.split_dim] - node.split_val;
        const int near = diff < 0.0 ? node.left : node.right;
        const int far = diff < 0.0 ? node.right : node.left;
        search(near, q);
        if (diff * diff * prune_scale_ <= best_d2_) search(far, q);
    }

    std::span<const PatchDescriptor> points_;
    size_t dim_;
    std::vector<size_t> order_;
    std::vector<Node> nodes_;
    int root_ = 0;
    mutable double best_d2_ = 0.0;
    mutable size_t best_idx_ = 0;
    mutable double prune_scale_ = 1.0;
};

}  // namespace

BinaryMask context_band(const BinaryMask& y, int k) {
    if (y.count() == 0) throw EmptyGroundTruth("context band needs a non-empty object");
    const BinaryMask dilated = morph(y, MorphOp::Dilate, k);
    std::vector<std::uint8_t> band(y.values().size());
    bool any = false;
    for (size_t i = 0; i < band.size(); ++i) {
        band[i] = dilated.values()[i] && !y.values()[i] ? 1 : 0;
        any = any || band[i];
    }
    if (!any) throw EmptyContext("object fills the frame, no contextual surroundings");
    return BinaryMask::from_values(y.width(), y.height(), std::move(band));
}

std::vector<PatchDescriptor> extract_patches(const LabImage& img, const BinaryMask& region,
                                             const CamoParams& params) {
    require_same_dims(region.width(), region.height(), img.width(), img.height());
    const int n = params.patch_size;
    if (n < 1 || params.overlap < 0 || params.overlap >= n)
        throw Error("patch size / overlap out of range");
    if (region.count() == 0) throw NoValidPatches("empty region");

    const int stride = params.stride();
    const int center = n / 2;
    std::vector<PixelCoord> anchors;
    for (int r = 0; r + n <= img.height(); r += stride)
        for (int c = 0; c + n <= img.width(); c += stride)
            if (region.at(r + center, c + center)) anchors.push_back({r, c});
    if (anchors.empty()) throw NoValidPatches("region too thin for a full patch");

    // Standardize anchor coordinates over this region's anchor set.
    double mr = 0.0, mc = 0.0;
    for (const auto& a : anchors) {
        mr += a.row;
        mc += a.col;
    }
    mr /= static_cast<double>(anchors.size());
    mc /= static_cast<double>(anchors.size());
    double vr = 0.0, vc = 0.0;
    for (const auto& a : anchors) {
        vr += (a.row - mr) * (a.row - mr);
        vc += (a.col - mc) * (a.col - mc);
    }
    const double sr = std::sqrt(vr / static_cast<double>(anchors.size()));
    const double sc = std::sqrt(vc / static_cast<double>(anchors.size()));

    std::vector<PatchDescriptor> out;
    out.reserve(anchors.size());
    for (const auto& a : anchors) {
        PatchDescriptor d;
        d.anchor = a;
        d.vector.reserve(static_cast<size_t>(3) * n * n + 2);
        for (int dr = 0; dr < n; ++dr)
            for (int dc = 0; dc < n; ++dc) {
                const LabTriple lab = img.at(a.row + dr, a.col + dc);
                d.vector.push_back(lab.l);
                d.vector.push_back(lab.a);
                d.vector.push_back(lab.b);
            }
        d.vector.push_back(params.coord_scale * (sr > 0.0 ? (a.row - mr) / sr : 0.0));
        d.vector.push_back(params.coord_scale * (sc > 0.0 ? (a.col - mc) / sc : 0.0));
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<size_t> nn_match(std::span<const PatchDescriptor> queries,
                             std::span<const PatchDescriptor> corpus, double eps) {
    if (corpus.empty()) throw EmptyCorpus("nearest-neighbor corpus is empty");
    const size_t dim = corpus.front().vector.size();
    for (const auto& d : corpus)
        if (d.vector.size() != dim) throw Error("corpus descriptors have mixed lengths");
    const KdTree tree(corpus, dim);

    std::vector<size_t> out(queries.size());
    for (size_t i = 0; i < queries.size(); ++i) {
        if (queries[i].vector.size() != dim) throw Error("query/corpus descriptor length mismatch");
        out[i] = tree.nearest(queries[i].vector, eps).second;
    }
    return out;
}

namespace {

struct Overpainted {
    LabImage image;
    BinaryMask covered;  // object pixels touched by at least one matched patch
};

Overpainted overpaint_with_coverage(const LabImage& img, const BinaryMask& y,
                                    std::span<const PatchMatch> matches, int patch_size) {
    require_same_dims(y.width(), y.height(), img.width(), img.height());
    const int w = img.width(), h = img.height();
    // Per-pixel mean as original + sum(contribution - original)/count: an
    // order-independent accumulation that reproduces the source value exactly
    // when every contribution equals it.
    std::vector<double> dev(static_cast<size_t>(w) * h * 3, 0.0);
    std::vector<int> count(static_cast<size_t>(w) * h, 0);

    for (const auto& m : matches) {
        for (int dr = 0; dr < patch_size; ++dr) {
            for (int dc = 0; dc < patch_size; ++dc) {
                const int tr = m.object_anchor.row + dr, tc = m.object_anchor.col + dc;
                const int sr = m.context_anchor.row + dr, sc = m.context_anchor.col + dc;
                if (tr >= h || tc >= w || sr >= h || sc >= w)
                    throw Error("patch match reaches outside the frame");
                const LabTriple src = img.at(sr, sc);
                const LabTriple orig = img.at(tr, tc);
                const size_t i = static_cast<size_t>(tr) * w + tc;
                dev[i * 3 + 0] += src.l - orig.l;
                dev[i * 3 + 1] += src.a - orig.a;
                dev[i * 3 + 2] += src.b - orig.b;
                ++count[i];
            }
        }
    }

    Overpainted out{LabImage(w, h), BinaryMask(w, h)};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const size_t i = static_cast<size_t>(r) * w + c;
            LabTriple v = img.at(r, c);
            if (y.at(r, c) && count[i] > 0) {
                const double k = static_cast<double>(count[i]);
                v.l += dev[i * 3 + 0] / k;
                v.a += dev[i * 3 + 1] / k;
                v.b += dev[i * 3 + 2] / k;
                out.covered.set(r, c, true);
            }
            out.image.set(r, c, v);
        }
    }
    return out;
}

double degree_from_delta(double delta, double gamma) {
    return std::expm1(gamma * (1.0 - delta / 100.0)) / std::expm1(gamma);
}

}  // namespace

double camouflage_degree(double delta, double gamma) {
    if (!(gamma > 0.0)) throw Error("degree mapping needs gamma > 0");
    return degree_from_delta(std::clamp(delta, 0.0, 100.0), gamma);
}

LabImage overpaint(const LabImage& img, const BinaryMask& y, std::span<const PatchMatch> matches,
                   int patch_size) {
    return overpaint_with_coverage(img, y, matches, patch_size).image;
}

CamoMap camouflage_map(const LabImage& repainted, const LabImage& original, const BinaryMask& y,
                       double gamma) {
    if (!(gamma > 0.0)) throw Error("degree mapping needs gamma > 0");
    require_same_dims(repainted.width(), repainted.height(), original.width(), original.height());
    require_same_dims(repainted.width(), repainted.height(), y.width(), y.height());
    std::vector<double> d(static_cast<size_t>(y.pixel_count()), 0.0);
    for (int r = 0; r < y.height(); ++r)
        for (int c = 0; c < y.width(); ++c)
            if (y.at(r, c)) {
                const double delta = ciede2000(repainted.at(r, c), original.at(r, c));
                d[static_cast<size_t>(r) * y.width() + c] = degree_from_delta(delta, gamma);
            }
    return CamoMap::from_values(y, std::move(d));
}

CamoMap quantify(const RgbImage& img, const BinaryMask& y, const CamoParams& params) {
    if (!(params.gamma > 0.0)) throw Error("degree mapping needs gamma > 0");
    if (params.band_width < 1) throw Error("context band width must be >= 1");
    require_same_dims(y.width(), y.height(), img.width(), img.height());
    const LabImage lab = rgb_to_lab(img);
    const BinaryMask band = context_band(y, params.band_width);

    const auto object_patches = extract_patches(lab, y, params);
    const auto context_patches = extract_patches(lab, band, params);
    const auto match_idx = nn_match(object_patches, context_patches, params.nn_eps);

    std::vector<PatchMatch> matches(object_patches.size());
    for (size_t i = 0; i < matches.size(); ++i)
        matches[i] = {object_patches[i].anchor, context_patches[match_idx[i]].anchor};

    const Overpainted rep = overpaint_with_coverage(lab, y, matches, params.patch_size);

    // Color difference on covered pixels; thin uncovered spots inherit the
    // value of their nearest covered pixel.
    const int w = y.width(), h = y.height();
    std::vector<double> delta(static_cast<size_t>(w) * h, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (rep.covered.at(r, c)) delta[static_cast<size_t>(r) * w + c] =
                ciede2000(rep.image.at(r, c), lab.at(r, c));

    const bool any_uncovered = [&] {
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (y.at(r, c) && !rep.covered.at(r, c)) return true;
        return false;
    }();
    if (any_uncovered) {
        const DistanceField field = distance_transform(rep.covered);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (y.at(r, c) && !rep.covered.at(r, c)) {
                    const PixelCoord p = field.nearest_at(r, c);
                    delta[static_cast<size_t>(r) * w + c] =
                        delta[static_cast<size_t>(p.row) * w + p.col];
                }
    }

    std::vector<double> d(static_cast<size_t>(w) * h, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (y.at(r, c))
                d[static_cast<size_t>(r) * w + c] =
                    degree_from_delta(delta[static_cast<size_t>(r) * w + c], params.gamma);
    return CamoMap::from_values(y, std::move(d));
}

}  // namespace camoeval
