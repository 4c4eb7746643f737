#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "lvef/geometry.hpp"
#include "lvef/lv_measure.hpp"
#include "lvef/pipeline.hpp"
#include "lvef/synth.hpp"
#include "lvef/tps_augment.hpp"

using namespace lvef;

namespace {

Contour regular_polygon(int n) {
    Contour c;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        c.points.push_back({50 + 40 * std::cos(t), 50 + 25 * std::sin(t)});
    }
    return c;
}

void BM_MinEnclosingTriangle(benchmark::State& state) {
    const Contour c = regular_polygon(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(min_enclosing_triangle(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinEnclosingTriangle)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_VolumeFromMask(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const BinaryMask m =
        rasterize_polygon(semi_ellipse_polygon(size / 2.0, 0.8 * size, 0.6 * size, 0.28 * size), size, size);
    for (auto _ : state) benchmark::DoNotOptimize(volume_from_mask(m));
}
BENCHMARK(BM_VolumeFromMask)->Arg(64)->Arg(112)->Arg(256);

void BM_FitTps(benchmark::State& state) {
    const std::vector<Point2> src = {{10, 10}, {50, 12}, {30, 40}, {70, 70}, {15, 60}};
    std::vector<Point2> dst = src;
    for (auto& p : dst) p = p + Point2{1.5, -2.0};
    for (auto _ : state) benchmark::DoNotOptimize(fit_tps(src, dst));
}
BENCHMARK(BM_FitTps);

void BM_SimulatePreviousMask(benchmark::State& state) {
    const BinaryMask m = rasterize_polygon(semi_ellipse_polygon(56, 90, 60, 28), 112, 112);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_previous_mask(m, seed++));
}
BENCHMARK(BM_SimulatePreviousMask);

void BM_RunEstimate(benchmark::State& state) {
    const SynthVideo v = generate_video(SynthConfig{});
    EstimateParams params;
    params.workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_estimate(v.masks, v.fps, params));
}
BENCHMARK(BM_RunEstimate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
