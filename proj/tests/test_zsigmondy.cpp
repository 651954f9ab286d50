#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "stochdyn/errors.hpp"
#include "stochdyn/rng.hpp"
#include "stochdyn/zsigmondy.hpp"

using namespace stochdyn;

namespace {

RationalMapLift z2c(long c) { return RationalMapLift::unicritical(2, Int(c)); }

RationalMapLift power_map(int d) {
  std::vector<Int> num(static_cast<std::size_t>(d) + 1, Int(0));
  num.back() = 1;
  return RationalMapLift::from_affine(num, {Int(1)});
}

ProjectivePoint pt(long a, long b) { return normalize(Int(a), Int(b)); }

std::vector<Int> numerators(const OrbitTable& table) {
  std::vector<Int> out;
  for (const auto& entry : table.entries) out.push_back(entry.a);
  return out;
}

} // namespace

TEST_CASE("orbit of z^2+1 from 1") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(1)});
  OrbitTable table = orbit(sys, Word(4, 0), pt(1, 1));
  REQUIRE(table.entries.size() == 4);
  CHECK(numerators(table) == std::vector<Int>{2, 5, 26, 677});
  for (const auto& entry : table.entries) CHECK(entry.b == 1);
  CHECK(!table.hit_zero);
  CHECK(!table.hit_infinity);
}

TEST_CASE("degenerate orbits set flags and stop") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-1)});
  OrbitTable table = orbit(sys, Word(5, 0), pt(0, 1)); // 0 -> -1 -> 0
  CHECK(table.hit_zero);
  CHECK(table.entries.size() == 2);

  GeneratingSystem power = GeneratingSystem::uniform({z2c(0)});
  OrbitTable inf = orbit(power, Word(3, 0), pt(1, 0));
  CHECK(inf.hit_infinity);
  CHECK(inf.entries.size() == 1);
}

TEST_CASE("primitive parts by gcd stripping") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(1)});
  OrbitTable table = orbit(sys, Word(4, 0), pt(1, 1));
  CHECK(primitive_part(table, 1) == 2);   // first entry keeps all primes
  CHECK(primitive_part(table, 2) == 5);
  CHECK(primitive_part(table, 3) == 13);  // 26 = 2 * 13, the 2 is old
  CHECK(primitive_part(table, 4) == 677);

  GeneratingSystem alt = GeneratingSystem::uniform({z2c(-3)});
  OrbitTable unit = orbit(alt, Word(3, 0), pt(2, 1)); // 1, -2, 1
  CHECK(primitive_part(unit, 1) == 1);    // unit numerator: 1 in Z
  CHECK(primitive_part(unit, 2) == 2);
  CHECK(primitive_part(unit, 3) == 1);
}

TEST_CASE("zsigmondy sets match the factorization oracle") {
  struct Case {
    GeneratingSystem sys;
    Word word;
    ProjectivePoint P;
    int horizon;
  };
  std::vector<Case> cases;
  // Bounded orbits run the full horizon 12; growing orbits stop at 7,
  // where the numerators still factor.
  cases.push_back({GeneratingSystem::uniform({z2c(-3)}), Word(12, 0), pt(2, 1), 12});
  cases.push_back({GeneratingSystem::uniform({z2c(-2)}), Word(12, 0), pt(2, 1), 12});
  cases.push_back({GeneratingSystem::uniform({z2c(0)}), Word(12, 0), pt(1, 1), 12});
  cases.push_back({GeneratingSystem::uniform({z2c(1)}), Word(7, 0), pt(1, 1), 7});
  cases.push_back({GeneratingSystem::uniform({z2c(1), z2c(3)}),
                   Word{0, 1, 0, 1, 0, 1, 0}, pt(1, 1), 7});
  cases.push_back({GeneratingSystem::uniform({z2c(1), z2c(3)}),
                   Word{0, 1, 1, 0, 1, 0, 0}, pt(1, 1), 7});

  for (auto& c : cases) {
    ZsigmondyReport report = zsigmondy_set(c.sys, c.word, c.P, c.horizon);
    OrbitTable table = orbit(c.sys, c.word, c.P);
    std::vector<Int> nums = numerators(table);
    std::vector<int> expected_members;
    for (int n = 1; n <= c.horizon; ++n) {
      const Int expected = oracles::factored_primitive_part(nums, n);
      CHECK(report.primitive_parts[static_cast<std::size_t>(n - 1)] == expected);
      if (expected == 1) expected_members.push_back(n);
    }
    CHECK(report.members == expected_members);
  }
}

TEST_CASE("unit case: z^2-3 from 2 puts 1 in the Zsigmondy set") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-3)});
  ZsigmondyReport report = zsigmondy_set(sys, Word(12, 0), pt(2, 1), 12);
  CHECK(std::find(report.members.begin(), report.members.end(), 1) !=
        report.members.end());
  // Finite orbit: the set is cofinite past the cycle entry.
  for (int n = 3; n <= 12; ++n) {
    CHECK(std::find(report.members.begin(), report.members.end(), n) !=
          report.members.end());
  }
}

TEST_CASE("zsigmondy demands a clean orbit") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(-1)});
  CHECK_THROWS_AS(zsigmondy_set(sys, Word(5, 0), pt(0, 1), 5),
                  OrbitDegenerateError);
}

TEST_CASE("zsigmondy output is lift independent") {
  // Scaling a lift by a constant does not change the reduced orbit.
  RationalMapLift plain = z2c(1);
  RationalMapLift scaled = RationalMapLift::from_forms(
      BinaryForm({Int(3), Int(0), Int(3)}), BinaryForm({Int(3), Int(0), Int(0)}));
  GeneratingSystem a = GeneratingSystem::uniform({plain});
  GeneratingSystem b = GeneratingSystem::uniform({scaled});
  ZsigmondyReport ra = zsigmondy_set(a, Word(8, 0), pt(1, 1), 8);
  ZsigmondyReport rb = zsigmondy_set(b, Word(8, 0), pt(1, 1), 8);
  CHECK(ra.members == rb.members);
  CHECK(ra.primitive_parts == rb.primitive_parts);
}

TEST_CASE("monotone prime support of primitive parts") {
  GeneratingSystem sys = GeneratingSystem::uniform({z2c(1), z2c(-3)});
  Word word = {0, 0, 1, 0, 1, 0, 0};
  OrbitTable table = orbit(sys, word, pt(1, 1));
  for (int n = 1; n <= static_cast<int>(table.entries.size()); ++n) {
    if (table.entries[static_cast<std::size_t>(n - 1)].a == 0) continue;
    Int r = primitive_part(table, n);
    CHECK(table.entries[static_cast<std::size_t>(n - 1)].a % r == 0);
    for (int m = 1; m < n; ++m) {
      const Int& a_m = table.entries[static_cast<std::size_t>(m - 1)].a;
      if (a_m == 0) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), a_m.get_mpz_t());
      CHECK(g == 1);
    }
  }
}

TEST_CASE("good pair check") {
  // z^2-1 from 0: 0 returns to its own orbit.
  GeneratingSystem deg = GeneratingSystem::uniform({z2c(-1)});
  GoodPairResult bad = good_pair_check(deg, Word(10, 0), pt(0, 1), 10, 1e-3);
  CHECK(bad.status == GoodPairStatus::Bad);

  // z^2+1 from 1: clean orbits and certified positive height.
  GeneratingSystem good_sys = GeneratingSystem::uniform({z2c(1)});
  GoodPairResult good = good_pair_check(good_sys, Word(10, 0), pt(1, 1), 10, 1e-3);
  CHECK(good.status == GoodPairStatus::Good);
  CHECK(good.height_lower_bound > 0);

  // Basepoint at infinity.
  GoodPairResult inf = good_pair_check(good_sys, Word(10, 0), pt(1, 0), 10, 1e-3);
  CHECK(inf.status == GoodPairStatus::Bad);

  // Preperiodic basepoint of a two-map system: certified zero height.
  GeneratingSystem pair = GeneratingSystem::uniform({z2c(0), z2c(-1)});
  GoodPairResult zero = good_pair_check(pair, Word(6, 0), pt(1, 1), 6, 1e-3);
  CHECK(zero.status == GoodPairStatus::Bad);
}

TEST_CASE("relaxed good-pair mode ignores the 0/infinity conditions") {
  // Orbit of 3 under z^2 - 9 passes through 0 but escapes afterwards.
  RationalMapLift phi = z2c(-9);
  GeneratingSystem sys = GeneratingSystem::uniform({phi});
  CHECK(phi.apply(pt(3, 1)) == pt(0, 1));

  GoodPairResult strict = good_pair_check(sys, Word(8, 0), pt(3, 1), 8, 1e-3);
  CHECK(strict.status == GoodPairStatus::Bad);

  GoodPairResult relaxed = good_pair_check(sys, Word(8, 0), pt(3, 1), 8, 1e-3,
                                           kDefaultBitBudget,
                                           GoodPairMode::Relaxed);
  CHECK(relaxed.status == GoodPairStatus::Good);
  CHECK(relaxed.height_lower_bound > 0);
}

TEST_CASE("primitive-prime-divisor hypotheses") {
  // z^4 + 1: degree 4 and squarefree numerator.
  RationalMapLift quartic = RationalMapLift::from_affine(
      {Int(1), Int(0), Int(0), Int(0), Int(1)}, {Int(1)});
  // z^2: degree too small.
  RationalMapLift small = z2c(0);
  // (x-1)^2 (x^2+1) over 1: repeated factor.
  RationalMapLift repeated = RationalMapLift::from_affine(
      {Int(1), Int(-2), Int(2), Int(-2), Int(1)}, {Int(1)});

  auto results = check_primdiv_hypotheses({quartic, small, repeated});
  REQUIRE(results.size() == 3);
  CHECK(results[0].pass);
  CHECK(!results[1].pass);
  CHECK(!results[1].degree_ok);
  CHECK(!results[2].pass);
  CHECK(results[2].degree_ok);
  CHECK(!results[2].disc_ok);
}
