#include <benchmark/benchmark.h>

#include "sphinterp/harmonics.hpp"
#include "sphinterp/hyperinterp.hpp"
#include "sphinterp/pointsets.hpp"
#include "sphinterp/quadrature.hpp"
#include "sphinterp/testfuncs.hpp"

namespace {

using namespace sphinterp;

void BM_EvalBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HarmonicBasis basis(n);
  std::vector<double> out(basis.size());
  const auto pts = random_uniform(256, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    basis.evaluate(pts[i++ % pts.size()], out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvalBasis)->Arg(6)->Arg(20)->Arg(60);

void BM_MzConstant(benchmark::State& state) {
  const auto rule = equal_weight_rule(random_uniform(static_cast<std::size_t>(state.range(0)), 2), Provenance::random);
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mz_constant(rule, n).eta);
}
BENCHMARK(BM_MzConstant)->Args({2000, 10})->Args({10000, 10})->Args({10000, 20})->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto rule = equal_weight_rule(equal_area(static_cast<std::size_t>(state.range(0))), Provenance::equal_area);
  const auto y = sample(rule, TestFunction::f1());
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fit(rule, y, n).coefficients().data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Fit)->Args({1000, 6})->Args({10000, 6})->Args({10000, 20})->Unit(benchmark::kMicrosecond);

void BM_KernelEval(benchmark::State& state) {
  const auto pts = random_uniform(2, 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_eval(n, pts[0], pts[1]));
}
BENCHMARK(BM_KernelEval)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
