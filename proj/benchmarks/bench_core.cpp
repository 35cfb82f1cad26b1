#include <benchmark/benchmark.h>

#include "ima/contrast.hpp"
#include "ima/darmois.hpp"
#include "ima/distributions.hpp"
#include "ima/experiments.hpp"
#include "ima/grid_map.hpp"
#include "ima/mpa.hpp"

using namespace ima;

static void BM_LocalContrast(benchmark::State& state) {
  const auto m = static_cast<int>(state.range(0));
  const auto d = static_cast<int>(state.range(1));
  const Matrix j = sample_isotropic_matrix(m, d, SphericalSampler::standard_gaussian(m), 1);
  for (auto _ : state) benchmark::DoNotOptimize(local_ima_contrast(j));
}
BENCHMARK(BM_LocalContrast)->Args({8, 3})->Args({64, 8})->Args({2048, 3})->Args({1024, 2});

static void BM_GridJacobian(benchmark::State& state) {
  const auto m = static_cast<int>(state.range(0));
  const auto map = sample_grid_map(2, m, 0.5, SphericalSampler::standard_gaussian(m), 0.01, 2);
  Rng rng(3);
  Vector s(2);
  for (auto _ : state) {
    s << rng.uniform_open(), rng.uniform_open();
    benchmark::DoNotOptimize(map.jacobian(s));
  }
}
BENCHMARK(BM_GridJacobian)->Arg(16)->Arg(1024);

static void BM_MpaJacobian(benchmark::State& state) {
  const auto p = FactorialDistribution::iid(UnivariateLaw::laplace(0, 1), 2);
  const RotatedGaussianMPA a(p, rotation_2d(0.5));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(a.jacobian(p.sample(rng)));
}
BENCHMARK(BM_MpaJacobian);

static void BM_DarmoisBuild(benchmark::State& state) {
  const auto density = correlated_gaussian_density(0.6);
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DarmoisMap::build(density, n).quadrature_mass());
}
BENCHMARK(BM_DarmoisBuild)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_GlobalContrastGrid(benchmark::State& state) {
  const auto map = sample_grid_map(2, 64, 0.5, SphericalSampler::standard_gaussian(64), 0.01, 5);
  const auto p = FactorialDistribution::iid(UnivariateLaw::uniform(0, 1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_global_contrast(map, p, 2000, 6).mean);
}
BENCHMARK(BM_GlobalContrastGrid)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
