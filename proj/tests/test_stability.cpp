#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "stochdyn/errors.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/stability.hpp"

using namespace stochdyn;

namespace {

RationalMapLift z2c(long c) { return RationalMapLift::unicritical(2, Int(c)); }

RationalMapLift z2_plus_z() {
  return RationalMapLift::from_affine({Int(0), Int(1), Int(1)}, {Int(1)});
}

ProjectivePoint pt(long a, long b) { return normalize(Int(a), Int(b)); }

GeneratingSystem kernel_pair() {
  return GeneratingSystem::uniform({z2c(0), z2c(-1)});
}

} // namespace

TEST_CASE("kernel example closes to {-1, 0, 1}") {
  StabilityVerdict verdict = stable_closure(kernel_pair(), pt(-1, 1));
  REQUIRE(verdict.finite);
  REQUIRE(verdict.stable_set.size() == 3);
  CHECK(verdict.stable_set[0] == pt(-1, 1));
  CHECK(verdict.stable_set[1] == pt(0, 1));
  CHECK(verdict.stable_set[2] == pt(1, 1));
}

TEST_CASE("non-kernel example escapes") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-2), z2_plus_z()});
  StabilityVerdict verdict = stable_closure(sys, pt(0, 1));
  REQUIRE(!verdict.finite);
  CHECK(verdict.witness_height > system_constants(sys).escape_bound());

  // Witness soundness: replay the recorded word from P.
  ProjectivePoint Q = pt(0, 1);
  for (int idx : verdict.witness_word) {
    Q = sys.map(idx).apply(Q);
  }
  CHECK(Q == verdict.witness);
  CHECK(weil_height(Q) == doctest::Approx(verdict.witness_height));
}

TEST_CASE("power map fixed point") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(0)});
  StabilityVerdict verdict = stable_closure(sys, pt(1, 1));
  REQUIRE(verdict.finite);
  REQUIRE(verdict.stable_set.size() == 1);
  CHECK(verdict.stable_set[0] == pt(1, 1));
}

TEST_CASE("closure sets are exactly closed under every map") {
  GeneratingSystem sys = kernel_pair();
  const double bound = system_constants(sys).escape_bound();
  for (const ProjectivePoint& P : {pt(-1, 1), pt(0, 1), pt(1, 0)}) {
    StabilityVerdict verdict = stable_closure(sys, P);
    if (!verdict.finite) continue;
    for (const ProjectivePoint& Q : verdict.stable_set) {
      for (const RationalMapLift& phi : sys.maps()) {
        ProjectivePoint image = phi.apply(Q);
        CHECK(std::find(verdict.stable_set.begin(), verdict.stable_set.end(),
                        image) != verdict.stable_set.end());
      }
      CHECK(weil_height(Q) <= bound + 1e-9);
    }
    CHECK(std::find(verdict.stable_set.begin(), verdict.stable_set.end(), P) !=
          verdict.stable_set.end());
  }
}

TEST_CASE("verdicts do not depend on the weights") {
  std::vector<RationalMapLift> maps = {z2c(0), z2c(-1)};
  GeneratingSystem skew = GeneratingSystem::make(maps, {Rat(1, 100), Rat(99, 100)});
  GeneratingSystem uniform = GeneratingSystem::uniform(maps);
  for (const ProjectivePoint& P : {pt(-1, 1), pt(2, 1), pt(0, 1), pt(3, 2)}) {
    CHECK(stable_closure(skew, P).finite == stable_closure(uniform, P).finite);
  }
}

TEST_CASE("zero-weight systems are rejected") {
  GeneratingSystem degenerate =
      GeneratingSystem::make({z2c(0), z2c(-1)}, {Rat(1), Rat(0)});
  CHECK_THROWS_AS(stable_closure(degenerate, pt(0, 1)), InvalidSystemError);
}

TEST_CASE("expected-height-zero equivalence against the heights module") {
  GeneratingSystem pair = kernel_pair();
  CHECK(is_expected_height_zero(pair, pt(-1, 1)));
  HeightEstimate zero = expected_height_exact(pair, pt(-1, 1), 10);
  CHECK(std::abs(zero.value) <= zero.error);

  GeneratingSystem other = GeneratingSystem::uniform({z2c(-2), z2_plus_z()});
  CHECK(!is_expected_height_zero(other, pt(0, 1)));
  HeightEstimate positive = expected_height_exact(other, pt(0, 1), 12);
  CHECK(positive.value - positive.error > 0);

  // Positive-height verdict for the plain power map at a non-torsion point.
  CHECK(!is_expected_height_zero(GeneratingSystem::uniform({z2c(0)}), pt(2, 1)));
}

TEST_CASE("single-map preperiodicity") {
  CHECK(preperiodic_single(z2c(0), pt(1, 1)));
  CHECK(preperiodic_single(z2c(-1), pt(0, 1)));   // 0 -> -1 -> 0
  CHECK(!preperiodic_single(z2c(0), pt(2, 1)));   // height doubles
  CHECK(preperiodic_single(z2c(0), pt(1, 0)));    // infinity is fixed
  CHECK(preperiodic_single(z2c(-2), pt(2, 1)));   // 2 is fixed under z^2-2
}

TEST_CASE("kernel probe on the paper example") {
  GeneratingSystem pair = kernel_pair();
  auto kernel = kernel_probe(pair, 2.0, Int(8));
  // Superset of {-1, 0, 1} within the box; infinity is S-stable too.
  for (const ProjectivePoint& expected :
       {pt(-1, 1), pt(0, 1), pt(1, 1), pt(1, 0)}) {
    CHECK(std::find(kernel.begin(), kernel.end(), expected) != kernel.end());
  }
  for (const ProjectivePoint& Q : kernel) {
    CHECK(is_expected_height_zero(pair, Q));
  }
}

TEST_CASE("kernel probe finds nothing for z^2+3 in a small box") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(3)});
  auto kernel = kernel_probe(sys, 1.0, Int(2));
  // Only infinity survives; no finite rational point is preperiodic here.
  for (const ProjectivePoint& Q : kernel) {
    CHECK(Q == pt(1, 0));
  }
}

TEST_CASE("kernel probe with an empty box") {
  CHECK(kernel_probe(kernel_pair(), -1.0, Int(5)).empty());
}

TEST_CASE("kernel probe enforces its enumeration budget") {
  CHECK_THROWS_AS(kernel_probe(kernel_pair(), 6.0, Int(200), 100),
                  BudgetExceededError);
}
