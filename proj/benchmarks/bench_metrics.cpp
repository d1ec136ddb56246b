#include <benchmark/benchmark.h>

#include <random>

#include "camoeval/baselines.hpp"

using namespace camoeval;

namespace {

struct Fixture {
    GrayMap x;
    BinaryMask xb;
    BinaryMask y;
};

Fixture make_fixture(int side) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BinaryMask y(side, side);
    const double c = side / 2.0, rad = side / 4.0;
    for (int r = 0; r < side; ++r)
        for (int cc = 0; cc < side; ++cc)
            if ((r - c) * (r - c) + (cc - c) * (cc - c) <= rad * rad) y.set(r, cc, true);
    std::vector<double> v(static_cast<size_t>(side) * side);
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = y.values()[i] ? 0.55 + 0.45 * u(rng) : 0.45 * u(rng);
    GrayMap x = GrayMap::from_values(side, side, std::move(v));
    BinaryMask xb = binarize_adaptive(x);
    return {std::move(x), std::move(xb), std::move(y)};
}

}  // namespace

static void BM_Mae(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mae(f.x, f.y));
}
BENCHMARK(BM_Mae)->Arg(352);

static void BM_Iou(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(iou(f.xb, f.y));
}
BENCHMARK(BM_Iou)->Arg(352);

static void BM_WeightedF(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(f_beta_w(f.x, f.y));
}
BENCHMARK(BM_WeightedF)->Arg(128)->Arg(352);

static void BM_SMeasure(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(s_measure(f.x, f.y));
}
BENCHMARK(BM_SMeasure)->Arg(352);

static void BM_EMeasure(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(e_measure(f.xb, f.y));
}
BENCHMARK(BM_EMeasure)->Arg(352);
