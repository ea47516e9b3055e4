// Benchmarks comparing the OpenMP-parallel estimator kernels against the
// serial reference implementation.
#include "gws/contacts.hpp"
#include "gws/estimator.hpp"
#include "gws/metrics.hpp"
#include "gws/sampling.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<gws::Contact> sphere_contacts(int m, double mu, std::uint64_t seed) {
  std::vector<gws::Contact> cs;
  for (int i = 0; i < m; ++i) {
    const gws::Vec3 n = gws::unit_direction3(seed, static_cast<std::uint64_t>(i));
    cs.push_back(gws::make_contact(n, (-n).eval(), gws::FrictionModel::pcf(mu)));
  }
  return cs;
}

void BM_EstimateParallel(benchmark::State& state) {
  const auto cs = sphere_contacts(static_cast<int>(state.range(0)), 0.5, 11);
  gws::EstimatorConfig cfg;
  cfg.K = static_cast<int>(state.range(1));
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gws::estimate_boundary(cs, cfg));
  }
}

void BM_EstimateSerial(benchmark::State& state) {
  const auto cs = sphere_contacts(static_cast<int>(state.range(0)), 0.5, 11);
  gws::EstimatorConfig cfg;
  cfg.K = static_cast<int>(state.range(1));
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gws::estimate_boundary_serial(cs, cfg));
  }
}

void BM_Sparsity(benchmark::State& state) {
  const auto cs = sphere_contacts(5, 0.5, 11);
  gws::EstimatorConfig cfg;
  cfg.K = static_cast<int>(state.range(0));
  cfg.seed = 3;
  const auto samples = gws::estimate_boundary(cs, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gws::sparsity(samples, 500, 7));
  }
}

}  // namespace

BENCHMARK(BM_EstimateParallel)->Args({5, 10000})->Args({5, 100000})->Args({10, 100000});
BENCHMARK(BM_EstimateSerial)->Args({5, 10000})->Args({5, 100000})->Args({10, 100000});
BENCHMARK(BM_Sparsity)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
