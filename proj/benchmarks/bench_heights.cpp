#include <benchmark/benchmark.h>

#include <cmath>

#include "stochdyn/heights.hpp"
#include "stochdyn/local_heights.hpp"
#include "stochdyn/stability.hpp"

using namespace stochdyn;

namespace {

GeneratingSystem kernel_pair() {
  return GeneratingSystem::uniform({RationalMapLift::unicritical(2, Int(0)),
                                    RationalMapLift::unicritical(2, Int(-1))});
}

ProjectivePoint two() { return normalize(Int(2), Int(1)); }

void BM_canonical_height(benchmark::State& state) {
  GeneratingSystem sys = kernel_pair();
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    HeightEstimate est = canonical_height(sys, WordSpec::sampled(7), two(), eps);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_canonical_height)->Arg(2)->Arg(4)->Arg(6);

void BM_expected_height_exact(benchmark::State& state) {
  GeneratingSystem sys = kernel_pair();
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    HeightEstimate est = expected_height_exact(sys, two(), depth);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_expected_height_exact)->Arg(6)->Arg(9)->Arg(12);

void BM_expected_height_mc(benchmark::State& state) {
  GeneratingSystem sys = kernel_pair();
  McOptions opts;
  opts.samples = state.range(0);
  opts.eps_inner = 1e-3;
  for (auto _ : state) {
    HeightEstimate est = expected_height_mc(sys, two(), opts);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_expected_height_mc)->Arg(100)->Arg(1000);

void BM_stable_closure(benchmark::State& state) {
  GeneratingSystem sys = kernel_pair();
  const ProjectivePoint P = normalize(Int(-1), Int(1));
  for (auto _ : state) {
    StabilityVerdict verdict = stable_closure(sys, P);
    benchmark::DoNotOptimize(verdict.finite);
  }
}
BENCHMARK(BM_stable_closure);

void BM_decompose(benchmark::State& state) {
  GeneratingSystem sys = kernel_pair();
  DivisorForm E = DivisorForm::make(BinaryForm({Int(1), Int(0)}));
  for (auto _ : state) {
    Decomposition dec = decompose(sys, WordSpec::sampled(3), E, two(), 1e-4);
    benchmark::DoNotOptimize(dec.sum);
  }
}
BENCHMARK(BM_decompose);

} // namespace
