#include <benchmark/benchmark.h>

#include "stqft/tqft.hpp"
#include "stqft/triangulation_io.hpp"

using namespace stqft;

static void BM_PhiB(benchmark::State& state) {
  const ModularParameter mp(1.3);
  cplx z(0.3, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_b(z, mp));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_PhiB);

static void BM_HyperbolicGamma(benchmark::State& state) {
  const ModularParameter mp(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_gamma(cplx(0.7, 0.4), mp));
}
BENCHMARK(BM_HyperbolicGamma);

static void BM_TetWeight(benchmark::State& state) {
  const Triangulation X({1}, {});
  ShapeStructure a;
  a.alpha = {{1.0, 0.9, kPi - 1.9}};
  const ModularParameter mp(1.0);
  State s(6, 0.0);
  s[0] = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(tet_weight(X, 0, a, s, mp));
}
BENCHMARK(BM_TetWeight);

static void BM_TrefoilPartition(benchmark::State& state) {
  const TriangulationFile f = load_triangulation(STQFT_EXAMPLES_DIR "/trefoil.json");
  const ModularParameter mp(1.0);
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(partition_function(f.complex, f.shape, mp, c));
}
BENCHMARK(BM_TrefoilPartition)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
