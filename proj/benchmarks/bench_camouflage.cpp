#include <benchmark/benchmark.h>

#include <random>

#include "camoeval/camouflage.hpp"

using namespace camoeval;

namespace {

RgbImage textured_image(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u8(0, 255);
    RgbImage img(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            img.set(r, c, static_cast<std::uint8_t>(u8(rng)), static_cast<std::uint8_t>(u8(rng)),
                    static_cast<std::uint8_t>(u8(rng)));
    return img;
}

BinaryMask centered_disk(int side, double radius) {
    BinaryMask m(side, side);
    const double c = side / 2.0;
    for (int r = 0; r < side; ++r)
        for (int cc = 0; cc < side; ++cc)
            if ((r - c) * (r - c) + (cc - c) * (cc - c) <= radius * radius) m.set(r, cc, true);
    return m;
}

}  // namespace

static void BM_RgbToLab(benchmark::State& state) {
    const RgbImage img = textured_image(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rgb_to_lab(img));
}
BENCHMARK(BM_RgbToLab)->Arg(128)->Arg(352);

static void BM_Quantify(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const RgbImage img = textured_image(side, 5);
    const BinaryMask y = centered_disk(side, side / 5.0);
    for (auto _ : state) benchmark::DoNotOptimize(quantify(img, y));
}
BENCHMARK(BM_Quantify)->Arg(96)->Arg(192);

static void BM_NnMatch(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const RgbImage img = textured_image(side, 9);
    const LabImage lab = rgb_to_lab(img);
    const BinaryMask y = centered_disk(side, side / 5.0);
    const BinaryMask band = context_band(y, 20);
    const CamoParams params;
    const auto obj = extract_patches(lab, y, params);
    const auto ctx = extract_patches(lab, band, params);
    for (auto _ : state) benchmark::DoNotOptimize(nn_match(obj, ctx, 0.0));
    state.SetItemsProcessed(state.iterations() * obj.size());
}
BENCHMARK(BM_NnMatch)->Arg(192);
