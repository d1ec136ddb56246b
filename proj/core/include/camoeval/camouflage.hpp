#pragma once

#include <span>
#include <vector>

#include "camoeval/camo_map.hpp"
#include "camoeval/color.hpp"
#include "camoeval/raster.hpp"

namespace camoeval {

/// Contextual-overpainting parameters. Patch anchors advance by
/// patch_size - overlap; overlap = patch_size - 1 gives dense extraction.
struct CamoParams {
    int band_width = 20;        // context band radius k, pixels
    int patch_size = 7;         // N
    int overlap = 3;            // shared pixels between neighboring patches
    double coord_scale = 20.0;  // lambda, weight of the spatial coordinates
    double gamma = 8.0;         // nonlinearity of the degree mapping
    double nn_eps = 0.0;        // ANN slack; 0 = exact nearest neighbor

    int stride() const { return patch_size - overlap; }
};

/// A patch embedded for matching: 3*N^2 flattened Lab values followed by two
/// standardized coordinates scaled by lambda.
struct PatchDescriptor {
    std::vector<double> vector;
    PixelCoord anchor;  // patch top-left; the patch lies fully in-frame
};

/// One object patch paired with its best context patch.
struct PatchMatch {
    PixelCoord object_anchor;
    PixelCoord context_anchor;
};

/// The contextual surroundings: dilate(y, k) minus y.
/// Throws EmptyGroundTruth / EmptyContext.
BinaryMask context_band(const BinaryMask& y, int k);

/// Dense overlapping patches on the stride grid whose center pixel lies in
/// `region` and which fit fully in-frame. Throws NoValidPatches.
std::vector<PatchDescriptor> extract_patches(const LabImage& img, const BinaryMask& region,
                                             const CamoParams& params);

/// For each query, the index of a corpus descriptor whose Euclidean distance
/// is within (1+eps) of the true nearest. eps = 0 is exact, with ties broken
/// by the lowest corpus index. Throws EmptyCorpus.
std::vector<size_t> nn_match(std::span<const PatchDescriptor> queries,
                             std::span<const PatchDescriptor> corpus, double eps = 0.0);

/// Rebuilds the object region from the matched context patches; overlapping
/// contributions are averaged per pixel. Pixels covered by no patch, and all
/// off-object pixels, keep their original value.
LabImage overpaint(const LabImage& img, const BinaryMask& y, std::span<const PatchMatch> matches,
                   int patch_size);

/// The degree mapping itself: a color difference delta (clamped to [0,100])
/// to D = (exp(gamma*(1 - delta/100)) - 1) / (exp(gamma) - 1) in [0,1].
double camouflage_degree(double delta, double gamma);

/// Camouflage degree from the repainted/original color difference:
/// D = camouflage_degree(CIEDE2000(R, I)) on the object, zero elsewhere.
CamoMap camouflage_map(const LabImage& repainted, const LabImage& original, const BinaryMask& y,
                       double gamma);

/// Full pipeline: Lab conversion, context band, patch matching, overpainting,
/// then the degree mapping. Object pixels no full patch covers inherit the
/// color difference of their nearest covered pixel.
CamoMap quantify(const RgbImage& img, const BinaryMask& y, const CamoParams& params = {});

}  // namespace camoeval
