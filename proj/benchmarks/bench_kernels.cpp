// Microbenchmarks for the per-pixel kernels: segmenters, boundary recall and
// GLCM feature extraction.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "spxkit/glcm.hpp"
#include "spxkit/segmenters.hpp"
#include "spxkit/spx_metrics.hpp"

namespace {

spx::MultibandRaster make_scene(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> noise(-12.0f, 12.0f);
  spx::MultibandRaster r;
  r.width = w;
  r.height = h;
  r.bands = 3;
  r.data.resize(r.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float base = 120.0f + 60.0f * std::sin(x / 53.0f) * std::cos(y / 37.0f);
      for (int b = 0; b < 3; ++b) r.at(x, y, b) = base + 15.0f * b + noise(rng);
    }
  }
  return r;
}

spx::GroundTruth make_gt(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 9);
  spx::GroundTruth gt;
  gt.width = w;
  gt.height = h;
  gt.classes.resize(static_cast<std::size_t>(w) * h);
  for (auto& c : gt.classes) {
    int v = pick(rng);
    c = v == 0 ? spx::GtClass::Excluded
               : (v < 6 ? spx::GtClass::Forest : spx::GtClass::Deforest);
  }
  return gt;
}

spx::SegmenterConfig bench_cfg(int pixels) {
  spx::SegmenterConfig cfg;
  cfg.k_desired = pixels / 170;  // roughly the production cell size
  cfg.min_size = 70;
  return cfg;
}

void BM_Slic(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto raster = make_scene(side, side, 1);
  auto cfg = bench_cfg(side * side);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spx::slic_segment(raster, cfg));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}

void BM_Snic(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto raster = make_scene(side, side, 2);
  auto cfg = bench_cfg(side * side);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spx::snic_segment(raster, cfg));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}

void BM_SeedCompetition(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto raster = make_scene(side, side, 3);
  auto cfg = bench_cfg(side * side);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spx::seed_competition_segment(raster, cfg));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}

void BM_BoundaryRecall(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto raster = make_scene(side, side, 4);
  auto labels = spx::grid_segment(raster, bench_cfg(side * side));
  auto gt = make_gt(side, side, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spx::boundary_recall(labels, gt));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}

void BM_GlcmFeatures(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto raster = make_scene(side, side, 6);
  spx::LabelMap whole;
  whole.width = side;
  whole.height = side;
  whole.labels.assign(static_cast<std::size_t>(side) * side, 0);
  spx::normalize_labels(whole);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spx::glcm_features(raster, whole, 0));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}

}  // namespace

BENCHMARK(BM_Slic)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Snic)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedCompetition)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundaryRecall)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GlcmFeatures)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
