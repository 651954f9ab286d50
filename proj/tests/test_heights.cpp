#include <cmath>

#include "doctest.h"
#include "stochdyn/errors.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/rng.hpp"

using namespace stochdyn;

namespace {

RationalMapLift power_map(int d) {
  std::vector<Int> num(static_cast<std::size_t>(d) + 1, Int(0));
  num.back() = 1;
  return RationalMapLift::from_affine(num, {Int(1)});
}

RationalMapLift z2c(long c) { return RationalMapLift::unicritical(2, Int(c)); }

RationalMapLift z2_plus_z() {
  return RationalMapLift::from_affine({Int(0), Int(1), Int(1)}, {Int(1)});
}

GeneratingSystem singleton_z2() { return GeneratingSystem::uniform({z2c(0)}); }

GeneratingSystem kernel_pair() {
  // S = {z^2, z^2 - 1}
  return GeneratingSystem::uniform({z2c(0), z2c(-1)});
}

ProjectivePoint pt(long a, long b) { return normalize(Int(a), Int(b)); }

} // namespace

TEST_CASE("power map canonical height equals the Weil height") {
  GeneratingSystem sys = singleton_z2();
  HeightEstimate est = canonical_height(sys, WordSpec::periodic({0}), pt(2, 1), 1e-6);
  CHECK(std::abs(est.value - std::log(2)) <= 1e-12);
  CHECK(std::abs(est.value - std::log(2)) <= est.error);
  CHECK(est.error <= 1e-6 + 1e-9);
  CHECK(!est.statistical);
}

TEST_CASE("finite orbits have canonical height zero") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-1)});
  // 0 -> -1 -> 0 -> ...
  HeightEstimate est = canonical_height(sys, WordSpec::periodic({0}), pt(0, 1), 1e-7);
  CHECK(est.value == 0.0);
  CHECK(est.error <= 1e-7 + 1e-9);

  // S = {z^2, z^2-1}, P = -1 gives 0 along every word.
  GeneratingSystem pair = kernel_pair();
  for (const Word& pattern : {Word{0}, Word{1, 0}, Word{0, 0, 1}}) {
    HeightEstimate h = canonical_height(pair, WordSpec::periodic(pattern),
                                        pt(-1, 1), 1e-7);
    CHECK(std::abs(h.value) <= h.error);
  }
  HeightEstimate sampled = canonical_height(pair, WordSpec::sampled(99),
                                            pt(-1, 1), 1e-7);
  CHECK(std::abs(sampled.value) <= sampled.error);
}

TEST_CASE("canonical height stays within C/(alpha-1) of the Weil height") {
  GeneratingSystem pair = kernel_pair();
  const double bound = system_constants(pair).escape_bound();
  RngStream rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    long a = static_cast<long>(rng.next_below(200)) - 100;
    long b = static_cast<long>(rng.next_below(99)) + 1;
    ProjectivePoint P = pt(a, b);
    HeightEstimate est = canonical_height(pair, WordSpec::sampled(trial), P, 1e-4);
    CHECK(std::abs(est.value - weil_height(P)) <= bound + est.error + 1e-9);
  }
}

TEST_CASE("intervals at finer tolerance nest") {
  GeneratingSystem pair = kernel_pair();
  RngStream rng(60);
  for (int trial = 0; trial < 15; ++trial) {
    long a = static_cast<long>(rng.next_below(40)) - 20;
    long b = static_cast<long>(rng.next_below(19)) + 1;
    ProjectivePoint P = pt(a, b);
    WordSpec word = WordSpec::sampled(1000 + trial);
    HeightEstimate coarse = canonical_height(pair, word, P, 1e-3);
    HeightEstimate fine = canonical_height(pair, word, P, 5e-4);
    CHECK(fine.value >= coarse.value - coarse.error);
    CHECK(fine.value <= coarse.value + coarse.error);
  }
}

TEST_CASE("shift identity along periodic words") {
  GeneratingSystem pair = kernel_pair();
  RngStream rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    const int len = 2 + static_cast<int>(rng.next_below(4));
    Word pattern;
    for (int i = 0; i < len; ++i) {
      pattern.push_back(static_cast<int>(rng.next_below(2)));
    }
    const int m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(len)));
    long a = static_cast<long>(rng.next_below(20)) - 10;
    long b = static_cast<long>(rng.next_below(9)) + 1;
    ProjectivePoint P = pt(a, b);

    // gamma_m . P and the rotated pattern realize the shifted word.
    ProjectivePoint Q = P;
    Int deg(1);
    for (int i = 0; i < m; ++i) {
      const RationalMapLift& phi = pair.map(pattern[static_cast<std::size_t>(i)]);
      Q = phi.apply(Q);
      deg *= phi.degree();
    }
    Word rotated;
    for (int i = 0; i < len; ++i) {
      rotated.push_back(pattern[static_cast<std::size_t>((m + i) % len)]);
    }
    HeightEstimate lhs = canonical_height(pair, WordSpec::periodic(rotated), Q, 1e-5);
    HeightEstimate rhs = canonical_height(pair, WordSpec::periodic(pattern), P, 1e-5);
    const double d = deg.get_d();
    CHECK(std::abs(lhs.value - d * rhs.value) <= lhs.error + d * rhs.error + 1e-9);
  }
}

TEST_CASE("expected height: singleton reduces to the canonical height") {
  GeneratingSystem sys = singleton_z2();
  HeightEstimate est = expected_height_exact(sys, pt(2, 1), 10);
  CHECK(est.value == doctest::Approx(std::log(2)).epsilon(1e-10));
}

TEST_CASE("expected height at depth zero is the Weil height") {
  GeneratingSystem pair = kernel_pair();
  HeightEstimate est = expected_height_exact(pair, pt(5, 3), 0);
  CHECK(est.value == doctest::Approx(weil_height(pt(5, 3))).epsilon(1e-12));
  CHECK(est.error >= system_constants(pair).escape_bound());
}

TEST_CASE("expected height interval at the kernel example contains zero") {
  GeneratingSystem pair = kernel_pair();
  HeightEstimate est = expected_height_exact(pair, pt(-1, 1), 12);
  CHECK(std::abs(est.value) <= est.error);
  CHECK(est.error < 1e-2);
}

TEST_CASE("expected height interval excludes zero off the kernel") {
  // S = {z^2-2, z^2+z}, P = 0 is preperiodic for each map separately
  // but carries positive expected height.
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-2), z2_plus_z()});
  HeightEstimate est = expected_height_exact(sys, pt(0, 1), 12);
  CHECK(est.value - est.error > 0);
}

TEST_CASE("expected height: successive depths give nested intervals") {
  GeneratingSystem pair = kernel_pair();
  GeneratingSystem mixed = GeneratingSystem::uniform({z2c(0), power_map(3)});
  for (const GeneratingSystem& sys : {pair, mixed}) {
    for (const ProjectivePoint& P : {pt(2, 1), pt(-3, 2)}) {
      HeightEstimate prev = expected_height_exact(sys, P, 2);
      for (int depth = 3; depth <= 7; ++depth) {
        HeightEstimate next = expected_height_exact(sys, P, depth);
        CHECK(next.value >= prev.value - prev.error - 1e-12);
        CHECK(next.value <= prev.value + prev.error + 1e-12);
        prev = next;
      }
    }
  }
}

TEST_CASE("expected height satisfies the O(1) comparison with Weil height") {
  GeneratingSystem pair = kernel_pair();
  const double bound = system_constants(pair).escape_bound();
  for (const ProjectivePoint& P : {pt(2, 1), pt(5, 3), pt(-7, 2), pt(0, 1)}) {
    HeightEstimate est = expected_height_exact(pair, P, 8);
    CHECK(std::abs(est.value - weil_height(P)) <= bound + est.error + 1e-9);
  }
}

TEST_CASE("monte carlo expectation") {
  McOptions opts;
  opts.samples = 200;
  opts.seed = 5;
  opts.eps_inner = 1e-4;

  // Singleton: zero sampling variance.
  GeneratingSystem sys = singleton_z2();
  HeightEstimate mc = expected_height_mc(sys, pt(2, 1), opts);
  CHECK(mc.statistical);
  CHECK(std::abs(mc.value - std::log(2)) <= opts.eps_inner + 1e-9);

  // Kernel example: zero within the interval.
  GeneratingSystem pair = kernel_pair();
  HeightEstimate zero = expected_height_mc(pair, pt(-1, 1), opts);
  CHECK(std::abs(zero.value) <= zero.error);

  // Determinism across thread counts.
  McOptions threaded = opts;
  threaded.threads = 2;
  HeightEstimate again = expected_height_mc(pair, pt(2, 1), opts);
  HeightEstimate par = expected_height_mc(pair, pt(2, 1), threaded);
  CHECK(again.value == par.value);
}

TEST_CASE("monte carlo interval covers the exact truncation") {
  GeneratingSystem pair = kernel_pair();
  const ProjectivePoint P = pt(2, 1);
  HeightEstimate exact = expected_height_exact(pair, P, 12);
  McOptions opts;
  opts.samples = 150;
  opts.eps_inner = 1e-3;
  opts.delta_conf = 0.05;
  int covered = 0;
  for (int seed = 0; seed < 20; ++seed) {
    opts.seed = static_cast<std::uint64_t>(seed) + 1;
    HeightEstimate mc = expected_height_mc(pair, P, opts);
    if (std::abs(mc.value - exact.value) <= mc.error) ++covered;
  }
  CHECK(covered >= 17);
}

TEST_CASE("family expectation stays inside the a-priori envelope") {
  UnicriticalFamily fam = UnicriticalFamily::geometric(1, 0.5);
  const ProjectivePoint P = pt(2, 1);
  McOptions opts;
  opts.samples = 300;
  opts.seed = 12;
  opts.eps_inner = 1e-3;
  HeightEstimate mc = expected_height_mc(fam, P, opts);
  const double envelope = system_constants(fam).escape_bound(); // log 2
  CHECK(std::abs(mc.value - weil_height(P)) <= envelope + mc.error);
}

TEST_CASE("variance estimates") {
  // Singleton: no sampling randomness.
  CHECK(variance_estimate(singleton_z2(), pt(2, 1), 50, 3, 1e-4) <= 2e-4);
  // All paths give 0 at the kernel point.
  CHECK(variance_estimate(kernel_pair(), pt(-1, 1), 50, 3, 1e-4) <= 2e-4);

  // Popoviciu bound sigma^2 <= (1/4)(2C/(alpha-1))^2.
  GeneratingSystem pair = kernel_pair();
  const double range = 2 * system_constants(pair).escape_bound();
  RngStream rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    long a = static_cast<long>(rng.next_below(60)) - 30;
    long b = static_cast<long>(rng.next_below(29)) + 1;
    const double var = variance_estimate(pair, pt(a, b), 200, trial, 1e-3);
    CHECK(var <= 0.25 * range * range + 1e-2);
  }
}

TEST_CASE("transformation law residuals stay within certified error") {
  // Singleton: degenerate identity.
  TransformationCheck single = transformation_check(singleton_z2(), pt(2, 1), 2, 8);
  CHECK(single.residual <= single.combined_error);

  // Common degree: nu* = nu.
  TransformationCheck common = transformation_check(kernel_pair(), pt(2, 1), 2, 8);
  CHECK(common.residual <= common.combined_error);

  // Mixed degrees {2,3}, uniform weights.
  GeneratingSystem mixed = GeneratingSystem::uniform({z2c(0), power_map(3)});
  for (int k : {1, 2}) {
    TransformationCheck t = transformation_check(mixed, pt(2, 1), k, 8);
    CHECK(t.residual <= t.combined_error);
  }
}

TEST_CASE("transformation law on random weighted systems") {
  RngStream rng(424243);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<RationalMapLift> maps = {z2c(static_cast<long>(rng.next_below(5)) - 2),
                                         power_map(3)};
    const long raw = 1 + static_cast<long>(rng.next_below(7));
    GeneratingSystem sys = GeneratingSystem::make(
        std::move(maps), {Rat(raw, 8), Rat(8 - raw, 8)});
    long a = static_cast<long>(rng.next_below(10)) - 5;
    long b = static_cast<long>(rng.next_below(4)) + 1;
    TransformationCheck t = transformation_check(sys, pt(a, b), 1, 6);
    CHECK(t.residual <= t.combined_error);
  }
}

TEST_CASE("iteration cap fires on runaway orbits") {
  GeneratingSystem sys = kernel_pair();
  CHECK_THROWS_AS(
      canonical_height(sys, WordSpec::periodic({1}), pt(12345, 7), 1e-12, 1 << 12),
      IterationCapError);
}

TEST_CASE("fixed words exhaust instead of fabricating letters") {
  GeneratingSystem sys = kernel_pair();
  FixedPath path(sys, {1, 1, 1});
  CHECK_THROWS_AS(
      canonical_height(system_constants(sys), path, pt(2, 1), 1e-9),
      WordExhaustedError);
}
