// Microbenchmarks for the hot paths: rank computations, ball volumes, the
// witness-set sweep, and nerve construction. Inputs are built once per
// benchmark from fixed seeds so timings are comparable across runs.
#include <benchmark/benchmark.h>

#include <random>

#include "embolic/good_balls.hpp"
#include "embolic/homology.hpp"
#include "embolic/mathutil.hpp"
#include "embolic/nerve.hpp"
#include "embolic/packing.hpp"
#include "embolic/space.hpp"

namespace {

using namespace embolic;

Gf2Matrix random_gf2(int n, unsigned seed) {
  std::mt19937 rng(seed);
  Gf2Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (rng() & 1u) m.set(r, c);
  return m;
}

void BM_Gf2Rank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Gf2Matrix m = random_gf2(n, 7u);
  for (auto _ : state) benchmark::DoNotOptimize(gf2_rank(m));  // by-value: copies internally
}
BENCHMARK(BM_Gf2Rank)->Arg(256)->Arg(1024)->Arg(2048);

void BM_FpRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(11u);
  FpMatrix m(n, n, 3);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = static_cast<std::int32_t>(rng() % 3u);
  for (auto _ : state) benchmark::DoNotOptimize(fp_rank(m));
}
BENCHMARK(BM_FpRank)->Arg(256)->Arg(512);

void BM_BallVolume(benchmark::State& state) {
  const MetricMeasureSpace s = circle_space(2000);
  int p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.ball_volume(p, 0.5));
    p = (p + 1) % s.point_count();
  }
}
BENCHMARK(BM_BallVolume);

void BM_WitnessSets(benchmark::State& state) {
  const MetricMeasureSpace s = sphere2_space(1000);
  GoodBallParams params;
  params.R0 = 0.7;
  params.theta = 1.0;
  params.alpha = pow5(s.dim() + params.theta);
  const Packing packing = build_packing(s, good_ball_table(s, params, 4));
  for (auto _ : state)
    benchmark::DoNotOptimize(cover_witness_sets(s, packing, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_WitnessSets)->Arg(1)->Arg(4);

void BM_BuildNerve(benchmark::State& state) {
  const MetricMeasureSpace s = flat_torus_space(1, 1, 40, 40);
  GoodBallParams params;
  params.R0 = 0.12;
  params.theta = 1.5;
  params.alpha = pow5(s.dim() + params.theta);
  const Packing packing = build_packing(s, good_ball_table(s, params, 4));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_nerve(s, packing, s.dim() + 1, 24, 4));
}
BENCHMARK(BM_BuildNerve);

void BM_ValidateSpace(benchmark::State& state) {
  const MetricMeasureSpace s = sphere2_space(800);
  for (auto _ : state) {
    MetricMeasureSpace rebuilt(s.dim(), s.inj(), s.weights(), s.dist_matrix());
    benchmark::DoNotOptimize(rebuilt.point_count());
  }
}
BENCHMARK(BM_ValidateSpace);

}  // namespace

BENCHMARK_MAIN();
