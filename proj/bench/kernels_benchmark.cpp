// Serial reference vs OpenMP kernels: the KSG neighbour-count kernel and the
// per-feature PIDF passes.

#include <benchmark/benchmark.h>

#include <numeric>

#include "pidf/datasets.hpp"
#include "pidf/ksg.hpp"
#include "pidf/pidf.hpp"

namespace {

pidf::SampleMatrix matrix(const pidf::Dataset& data, const pidf::VarGroup& g) {
  std::vector<std::size_t> rows(data.n_samples());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return pidf::standardized_matrix(data, g, 1, rows);
}

void ksg_kernel(benchmark::State& state, bool parallel) {
  const auto data = pidf::generate({pidf::DatasetId::wt, static_cast<std::size_t>(state.range(0)), 3});
  const auto a = matrix(data, pidf::VarGroup::target_only());
  const auto b = matrix(data, pidf::VarGroup::of({0, 1}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? pidf::ksg_mi_parallel(a, b, 3) : pidf::ksg_mi_serial(a, b, 3));
  }
  state.SetComplexityN(state.range(0));
}

void BM_KsgSerial(benchmark::State& state) { ksg_kernel(state, false); }
void BM_KsgParallel(benchmark::State& state) { ksg_kernel(state, true); }
BENCHMARK(BM_KsgSerial)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KsgParallel)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void pidf_pass(benchmark::State& state, bool parallel) {
  const auto data = pidf::generate({pidf::DatasetId::terc2, static_cast<std::size_t>(state.range(0)), 5});
  pidf::PidfConfig cfg;
  cfg.parallel = parallel;
  cfg.estimator.parallel = parallel;
  for (auto _ : state) {
    auto run = parallel ? pidf::run_pidf(data, cfg) : pidf::run_pidf_serial(data, cfg);
    benchmark::DoNotOptimize(run.report.features.data());
  }
}

void BM_PidfSerial(benchmark::State& state) { pidf_pass(state, false); }
void BM_PidfParallel(benchmark::State& state) { pidf_pass(state, true); }
BENCHMARK(BM_PidfSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PidfParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
