#include <benchmark/benchmark.h>

#include "bbsd/covariance.hpp"
#include "bbsd/lrt.hpp"
#include "bbsd/pevd.hpp"
#include "bbsd/projection.hpp"
#include "bbsd/signalgen.hpp"

namespace {

using namespace bbsd;

SourceModel scenario_model(int J) {
  ScenarioConfig c;
  c.J = J;
  Rng rng(1);
  return build_mixing_system(c, rng);
}

void BM_Multiply(benchmark::State& state) {
  Rng rng(2);
  const int order = static_cast<int>(state.range(0));
  const auto a = random_paraunitary(10, order, rng);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, paraconjugate(a)));
}
BENCHMARK(BM_Multiply)->Arg(10)->Arg(40);

void BM_PevdScenario(benchmark::State& state) {
  const auto R = ground_truth_csd(scenario_model(static_cast<int>(state.range(0))), 1.0).first;
  PevdOptions opts;
  opts.max_iter = static_cast<int>(state.range(1));
  opts.residual_tol = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(pevd(R, opts));
}
BENCHMARK(BM_PevdScenario)->Args({10, 500})->Unit(benchmark::kMillisecond);

void BM_EstimateCsd(benchmark::State& state) {
  ScenarioConfig c;
  const auto m = scenario_model(10);
  Rng rng(3);
  const CMatrix x = generate_measurements(m, c, false, state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_csd(x, 20));
}
BENCHMARK(BM_EstimateCsd)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Project(benchmark::State& state) {
  Rng rng(4);
  const auto q = random_paraunitary(10, static_cast<int>(state.range(0)), rng).columns(7, 3);
  const CMatrix x = rng.complex_normal(10, 100000);
  for (auto _ : state) benchmark::DoNotOptimize(project(q, x));
}
BENCHMARK(BM_Project)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

// Measurement path (K = MT) against subspace path (K = (M - L) T).
void BM_BuildDetector(benchmark::State& state) {
  const auto K = state.range(0);
  Rng rng(5);
  const CMatrix g = rng.complex_normal(K, K);
  const CMatrix r0 = g * g.adjoint() / static_cast<double>(K) + CMatrix::Identity(K, K);
  const CMatrix h = rng.complex_normal(K, 10);
  const CMatrix r01 = r0 + h * h.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(build_detector(r0, r01));
}
BENCHMARK(BM_BuildDetector)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_BuildDetectorWoodbury(benchmark::State& state) {
  const auto K = state.range(0);
  Rng rng(6);
  const CMatrix g = rng.complex_normal(K, K);
  const CMatrix r0 = g * g.adjoint() / static_cast<double>(K) + CMatrix::Identity(K, K);
  const TransientFactor h{rng.complex_normal(K, 10)};
  for (auto _ : state) benchmark::DoNotOptimize(build_detector_woodbury(r0, h));
}
BENCHMARK(BM_BuildDetectorWoodbury)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_TestStatistics(benchmark::State& state) {
  const auto K = state.range(0);
  Rng rng(7);
  const CMatrix r0 = CMatrix::Identity(K, K);
  const CMatrix h = rng.complex_normal(K, 10);
  const auto det = build_detector(r0, r0 + h * h.adjoint());
  const CMatrix y = rng.complex_normal(K, 10000);
  for (auto _ : state) benchmark::DoNotOptimize(test_statistics(det, y));
  state.SetItemsProcessed(state.iterations() * y.cols());
}
BENCHMARK(BM_TestStatistics)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
