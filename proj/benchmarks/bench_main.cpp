#include <benchmark/benchmark.h>

#include <vector>

#include "dmdl/detectors.hpp"
#include "dmdl/dmdl_stats.hpp"
#include "dmdl/nml_gaussian.hpp"
#include "dmdl/rng.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  dmdl::Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.gaussian();
  return x;
}

void BM_NmlCodelength(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  const dmdl::GaussianNmlConfig cfg = dmdl::resolve_default_config(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmdl::nml_codelength(x, cfg));
  }
}
BENCHMARK(BM_NmlCodelength)->Arg(64)->Arg(1024)->Arg(16384);

void BM_BestCutScan(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  const dmdl::GaussianNmlConfig cfg = dmdl::resolve_default_config(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmdl::best_cut(x, 0, cfg));
  }
}
BENCHMARK(BM_BestCutScan)->Arg(64)->Arg(256)->Arg(1024);

void BM_RunFixed(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
  dmdl::DetectorConfig cfg;
  cfg.mode = dmdl::DetectorMode::fixed;
  cfg.h = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmdl::run_fixed(x, cfg));
  }
}
BENCHMARK(BM_RunFixed)->Arg(2000)->Arg(10000);

void BM_RunAdaptive(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 4);
  dmdl::DetectorConfig cfg;
  cfg.mode = dmdl::DetectorMode::adaptive;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmdl::run_adaptive(x, cfg, 0));
  }
}
BENCHMARK(BM_RunAdaptive)->Arg(500)->Arg(2000);

void BM_RunHierarchical(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 5);
  dmdl::DetectorConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmdl::run_hierarchical(x, cfg));
  }
}
BENCHMARK(BM_RunHierarchical)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
