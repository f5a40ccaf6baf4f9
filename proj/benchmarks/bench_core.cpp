#include <benchmark/benchmark.h>

#include "dropflow/evolve.hpp"
#include "dropflow/geometry.hpp"
#include "dropflow/shapes.hpp"
#include "dropflow/stokes.hpp"

using namespace dropflow;

static void BM_CurveFrame(benchmark::State& state) {
  auto c = shapes::ellipse(2.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(curve_frame(c));
}
BENCHMARK(BM_CurveFrame)->Arg(128)->Arg(512);

static void BM_Resample(benchmark::State& state) {
  auto c = shapes::ellipse(2.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resample(c, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Resample)->Arg(128)->Arg(512);

static void BM_UbcRadius(benchmark::State& state) {
  auto bd = shapes::annulus_boundary(1.0, 2.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ubc_radius(bd));
}
BENCHMARK(BM_UbcRadius)->Arg(128)->Arg(256);

static void BM_StokesSolve(benchmark::State& state) {
  auto bd = shapes::annulus_boundary(1.0, 2.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_stokes(bd, 1.0));
}
BENCHMARK(BM_StokesSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_EvolveStep(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.shape.type = "annulus";
  cfg.nodes = static_cast<int>(state.range(0));
  SimulationState st;
  st.boundary = cfg.shape.build(cfg.nodes);
  st.solution = solve_stokes(st.boundary, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(step(st, cfg, 1e-3));
}
BENCHMARK(BM_EvolveStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SignedDistance(benchmark::State& state) {
  auto bd = shapes::ellipse_boundary(2.0, 1.0, 256);
  BoundaryProximity prox(bd);
  double x = 0;
  for (auto _ : state) {
    x += 1e-7;
    benchmark::DoNotOptimize(prox.signed_distance(Vec2(0.3 + x, 0.2)));
  }
}
BENCHMARK(BM_SignedDistance);

BENCHMARK_MAIN();
