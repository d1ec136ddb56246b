#include <benchmark/benchmark.h>

#include <random>

#include "camoeval/context_measure.hpp"
#include "camoeval/correlation.hpp"

using namespace camoeval;

namespace {

BinaryMask centered_disk(int side, double radius) {
    BinaryMask m(side, side);
    const double c = (side - 1) / 2.0;
    for (int r = 0; r < side; ++r)
        for (int cc = 0; cc < side; ++cc)
            if ((r - c) * (r - c) + (cc - c) * (cc - c) <= radius * radius) m.set(r, cc, true);
    return m;
}

GrayMap noise_map(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(static_cast<size_t>(side) * side);
    for (double& x : v) x = u(rng);
    return GrayMap::from_values(side, side, std::move(v));
}

}  // namespace

static void BM_BuildKernel(benchmark::State& state) {
    const BinaryMask y = centered_disk(static_cast<int>(state.range(0)), state.range(0) / 4.0);
    const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), 6.0);
    for (auto _ : state) benchmark::DoNotOptimize(build_kernel(cov));
}
BENCHMARK(BM_BuildKernel)->Arg(64)->Arg(256);

static void BM_ConvolveDense(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const BinaryMask y = centered_disk(side, side / 4.0);
    const GrayMap x = noise_map(side, 1);
    const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), 6.0);
    const GaussianKernel k = build_kernel(cov);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(x, k));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ConvolveDense)->Arg(64)->Arg(128)->Arg(256);

static void BM_ConvolveSparseMask(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const BinaryMask y = centered_disk(side, 10.0);
    const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), 6.0);
    const GaussianKernel k = build_kernel(cov);
    const GrayMap ygray = y.to_gray();
    for (auto _ : state) benchmark::DoNotOptimize(convolve(ygray, k));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ConvolveSparseMask)->Arg(128)->Arg(512);

static void BM_ContextMeasure(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const BinaryMask y = centered_disk(side, side / 5.0);
    const GrayMap x = y.to_gray();
    for (auto _ : state) benchmark::DoNotOptimize(context_measure(x, y, {6.0, 1.0}));
}
BENCHMARK(BM_ContextMeasure)->Arg(128)->Arg(352);
