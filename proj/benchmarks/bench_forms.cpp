#include <benchmark/benchmark.h>

#include "stochdyn/binary_form.hpp"
#include "stochdyn/rational_map.hpp"
#include "stochdyn/rng.hpp"

using namespace stochdyn;

namespace {

BinaryForm random_form(int d, RngStream& rng) {
  std::vector<Int> coeffs;
  for (int i = 0; i <= d; ++i) {
    coeffs.emplace_back(static_cast<long>(rng.next_below(19)) - 9);
  }
  return BinaryForm(std::move(coeffs));
}

void BM_sylvester_resultant(benchmark::State& state) {
  RngStream rng(1);
  const int d = static_cast<int>(state.range(0));
  BinaryForm F = random_form(d, rng);
  BinaryForm G = random_form(d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sylvester_resultant(F, G));
  }
}
BENCHMARK(BM_sylvester_resultant)->Arg(2)->Arg(4)->Arg(8);

void BM_map_construction(benchmark::State& state) {
  // from_affine includes the resultant and the cofactor certificate.
  const int d = static_cast<int>(state.range(0));
  std::vector<Int> num(static_cast<std::size_t>(d) + 1, Int(0));
  num[0] = 7;
  num.back() = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RationalMapLift::from_affine(num, {Int(1)}));
  }
}
BENCHMARK(BM_map_construction)->Arg(2)->Arg(4)->Arg(6);

void BM_orbit_step_large(benchmark::State& state) {
  // One evaluate+reduce on coordinates of ~2^range bits.
  RationalMapLift phi = RationalMapLift::unicritical(2, Int(1));
  const int bits = static_cast<int>(state.range(0));
  ProjectivePoint P = normalize((Int(1) << bits) + 7, (Int(1) << (bits - 1)) + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi.apply(P));
  }
}
BENCHMARK(BM_orbit_step_large)->Arg(1024)->Arg(16384)->Arg(262144);

} // namespace

BENCHMARK_MAIN();
