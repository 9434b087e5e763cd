#include <benchmark/benchmark.h>

#include "ucgl/groupoid.hpp"
#include "ucgl/report.hpp"
#include "ucgl/symplectic.hpp"

namespace {

using namespace ucgl;

void BM_DeriveRootSets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derive_root_sets(n));
}
BENCHMARK(BM_DeriveRootSets)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_BuildMonodromy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rs = load_or_derive_root_sets(n);
  const auto s = random_params(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_M(rs, s));
}
BENCHMARK(BM_BuildMonodromy)->DenseRange(1, 4);

void BM_TangentSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rs = load_or_derive_root_sets(n);
  const auto p = sample_z_point(rs, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tangent_space(rs, p));
}
BENCHMARK(BM_TangentSpace)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_Omega(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rs = load_or_derive_root_sets(n);
  const auto p = sample_z_point(rs, 5);
  const auto basis = tangent_space(rs, p);
  for (auto _ : state) benchmark::DoNotOptimize(omega(p, basis.front(), basis.back()));
}
BENCHMARK(BM_Omega)->DenseRange(1, 4);

void BM_Closedness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rs = load_or_derive_root_sets(n);
  const auto p = sample_z_point(rs, 7);
  for (auto _ : state) benchmark::DoNotOptimize(closedness_residual(rs, p));
}
BENCHMARK(BM_Closedness)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_VerifyAll(benchmark::State& state) {
  SuiteConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.samples = 5;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(cfg));
}
BENCHMARK(BM_VerifyAll)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
