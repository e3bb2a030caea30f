// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "vecmap/eval.hpp"
#include "vecmap/losses.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/random.hpp"
#include "vecmap/refine.hpp"
#include "vecmap/scenegen.hpp"

namespace {

using namespace vecmap;

Polyline dense_arc(int samples) {
  std::vector<Point2> pts;
  const double radius = 40.0;
  for (int i = 0; i < samples; ++i) {
    const double s = 80.0 * static_cast<double>(i) / (samples - 1);
    pts.push_back({radius * std::sin(s / radius), radius * (1.0 - std::cos(s / radius))});
  }
  return Polyline(std::move(pts), false);
}

void BM_RdpSimplify(benchmark::State& state) {
  const Polyline arc = dense_arc(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdp_simplify(arc, 0.05));
  }
}
BENCHMARK(BM_RdpSimplify)->Arg(100)->Arg(400);

void BM_ResampleUniform(benchmark::State& state) {
  const Polyline arc = dense_arc(200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_uniform(arc, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ResampleUniform)->Arg(17)->Arg(100);

void BM_ChamferDistance(benchmark::State& state) {
  const Polyline a = dense_arc(60);
  Rng rng(1);
  std::vector<Point2> moved = a.vertices();
  for (Point2& p : moved) p += Point2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const Polyline b(moved, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chamfer_distance(a, b));
  }
}
BENCHMARK(BM_ChamferDistance);

void BM_PolylineMatchCost(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(2);
  PredictedElement pred;
  std::vector<Point2> target;
  for (int j = 0; j < d; ++j) {
    pred.vertices.push_back({rng.uniform(-15, 15), rng.uniform(-30, 30)});
    target.push_back({rng.uniform(-15, 15), rng.uniform(-30, 30)});
  }
  const PermutationSet perms = equivalent_permutations(state.range(1) != 0, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyline_match_cost(pred, target, perms));
  }
}
BENCHMARK(BM_PolylineMatchCost)->Args({17, 0})->Args({17, 1});

void BM_Hungarian(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  CostMatrix m;
  m.n = n;
  m.real_rows = n;
  m.cost.resize(n * n);
  for (double& c : m.cost) c = rng.uniform(-5.0, 5.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hungarian(m));
  }
}
BENCHMARK(BM_Hungarian)->Arg(16)->Arg(50);

void BM_PolylineLoss(benchmark::State& state) {
  Rng rng(4);
  const int d = 17;
  std::vector<Point2> target, pred;
  Point2 cur{0, -20};
  for (int j = 0; j < d; ++j) {
    target.push_back(cur);
    pred.push_back(cur + Point2{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    cur += Point2{rng.uniform(-0.5, 0.5), 2.5};
  }
  const VertexRoleMask mask = VertexRoleMask::midpoint_doubling(9);
  const LossWeights w;
  for (auto _ : state) {
    benchmark::DoNotOptimize(polyline_loss(pred, target, mask, w));
  }
}
BENCHMARK(BM_PolylineLoss);

void BM_FitLayerStep(benchmark::State& state) {
  const SceneSpec spec = standard_suite()[0];
  const PerceptionRange range = PerceptionRange::regular();
  const GroundTruthSet scene = generate_scene(spec, range);
  FitConfig config;
  config.seed = 1;
  config.steps_per_layer = 1;
  const std::vector<MatchTarget> targets = make_targets(scene, 3);
  FitState state0;
  state0.candidates = init_candidates(config, range);
  for (auto _ : state) {
    FitState s = state0;
    benchmark::DoNotOptimize(fit_layer(std::move(s), targets, config));
  }
}
BENCHMARK(BM_FitLayerStep);

void BM_ProgressiveFitScene(benchmark::State& state) {
  const SceneSpec spec = standard_suite()[0];
  const PerceptionRange range = PerceptionRange::regular();
  const GroundTruthSet scene = generate_scene(spec, range);
  FitConfig config;
  config.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(progressive_fit(scene, range, config));
  }
}
BENCHMARK(BM_ProgressiveFitScene)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
