#include "doctest.h"
#include "stochdyn/errors.hpp"
#include "stochdyn/riccati.hpp"
#include "stochdyn/rng.hpp"

using namespace stochdyn;

namespace {

constexpr std::uint64_t P5 = 5;

FpPoly poly(std::uint64_t p, std::vector<std::uint64_t> c) {
  return FpPoly(p, std::move(c));
}

FpRatFunc rf(std::uint64_t p, std::vector<std::uint64_t> num,
             std::vector<std::uint64_t> den = {1}) {
  return FpRatFunc::make(poly(p, std::move(num)), poly(p, std::move(den)));
}

// x^3 + t x + 1 over F_5(t): A_0 = 1, A_1 = 0, A_2 = t, A_3 = 1.
FpPolySelfMap cubic_tx() {
  return FpPolySelfMap::make(
      3, {rf(P5, {1}), rf(P5, {0}), rf(P5, {0, 1}), rf(P5, {1})});
}

} // namespace

TEST_CASE("derivatives in F_p(t)") {
  // (t^2)' = 2t
  CHECK(rf(P5, {0, 0, 1}).ddt() == rf(P5, {0, 2}));
  // (1/t)' = -1/t^2
  CHECK(rf(P5, {1}, {0, 1}).ddt() == rf(P5, {4}, {0, 0, 1}));
  // (t^p)' = 0
  CHECK(rf(P5, {0, 0, 0, 0, 0, 1}).ddt().is_zero());
}

TEST_CASE("ddt kills p-th powers") {
  RngStream rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint64_t> num(1 + rng.next_below(3));
    for (auto& c : num) c = rng.next_below(P5);
    FpRatFunc f = rf(P5, num, {1 + rng.next_below(4), 1});
    FpRatFunc fifth = f * f * f * f * f;
    CHECK(fifth.ddt().is_zero());
  }
}

TEST_CASE("leibniz rule and F_p-linearity on random elements") {
  RngStream rng(3);
  auto random_rf = [&]() {
    std::vector<std::uint64_t> num(1 + rng.next_below(4));
    std::vector<std::uint64_t> den(1 + rng.next_below(3));
    for (auto& c : num) c = rng.next_below(P5);
    for (auto& c : den) c = rng.next_below(P5);
    den.back() = 1 + rng.next_below(P5 - 1);
    return rf(P5, num, den);
  };
  for (int trial = 0; trial < 100; ++trial) {
    FpRatFunc f = random_rf();
    FpRatFunc g = random_rf();
    CHECK((f * g).ddt() == f.ddt() * g + f * g.ddt());
    CHECK((f + g).ddt() == f.ddt() + g.ddt());
  }
}

TEST_CASE("delta of the worked example") {
  // delta = 2*3*1*t - 2*0 = 6t = t mod 5.
  CHECK(delta(cubic_tx()) == rf(P5, {0, 1}));

  // A_1 = A_2 = 0 kills delta.
  FpPolySelfMap no_middle = FpPolySelfMap::make(
      3, {rf(P5, {1}), rf(P5, {0}), rf(P5, {0}), rf(P5, {2})});
  CHECK(delta(no_middle).is_zero());

  // Constant coefficients: delta = 2*3*1*1 = 6 = 1 in F_5.
  FpPolySelfMap constant = FpPolySelfMap::make(
      3, {rf(P5, {1}), rf(P5, {0}), rf(P5, {1}), rf(P5, {0})});
  CHECK(delta(constant) == rf(P5, {1}));
}

TEST_CASE("riccati coefficients of the worked example") {
  RiccatiCoeffs rc = riccati_coeffs(cubic_tx());
  CHECK(rc.b == rf(P5, {3}, {0, 1}));  // 3/t
  CHECK(rc.f == rf(P5, {4}, {0, 1}));  // 9/t = 4/t
  CHECK(rc.c.is_zero());
  CHECK(rc.g == rf(P5, {1}, {0, 1}));  // -4/t = 1/t
}

TEST_CASE("riccati data all vanish for constant coefficients") {
  FpPolySelfMap constant = FpPolySelfMap::make(
      3, {rf(P5, {2}), rf(P5, {1}), rf(P5, {3}), rf(P5, {4})});
  REQUIRE(!delta(constant).is_zero());
  RiccatiCoeffs rc = riccati_coeffs(constant);
  CHECK(rc.b.is_zero());
  CHECK(rc.f.is_zero());
  CHECK(rc.c.is_zero());
  CHECK(rc.g.is_zero());
}

TEST_CASE("riccati error paths") {
  FpPolySelfMap no_middle = FpPolySelfMap::make(
      3, {rf(P5, {1}), rf(P5, {0}), rf(P5, {0}), rf(P5, {2})});
  CHECK_THROWS_AS(riccati_coeffs(no_middle), SingularDeltaError);

  // p | d: degree 5 over F_5.
  FpPolySelfMap frob = FpPolySelfMap::make(
      5, {rf(P5, {1}), rf(P5, {0}), rf(P5, {0, 1}), rf(P5, {0}), rf(P5, {0}),
          rf(P5, {1})});
  CHECK_THROWS_AS(riccati_coeffs(frob), BadCharacteristicError);

  CHECK_THROWS_AS(FpPolySelfMap::make(2, {rf(P5, {1}), rf(P5, {0}), rf(P5, {1})}),
                  InvalidSystemError);
  CHECK_THROWS_AS(poly(4, {1}), BadCharacteristicError);
  CHECK_THROWS_AS(poly(2, {1}), BadCharacteristicError);
}

TEST_CASE("riccati coefficients agree with an independent generic evaluation") {
  // Expand the displayed formulas with a fresh symbolic route: evaluate
  // numerators and denominators separately as polynomials and compare.
  RngStream rng(77);
  int tested = 0;
  while (tested < 100) {
    std::vector<FpRatFunc> coeffs;
    for (int i = 0; i < 4; ++i) {
      std::vector<std::uint64_t> num(1 + rng.next_below(3));
      for (auto& c : num) c = rng.next_below(P5);
      coeffs.push_back(rf(P5, num));
    }
    if (coeffs[0].is_zero()) continue;
    FpPolySelfMap phi = FpPolySelfMap::make(3, coeffs);
    const FpRatFunc dlt = delta(phi);
    if (dlt.is_zero()) continue;
    ++tested;

    const FpRatFunc& A0 = phi.A[0];
    const FpRatFunc& A1 = phi.A[1];
    const FpRatFunc& A2 = phi.A[2];
    const FpRatFunc& A3 = phi.A[3];
    auto k = [&](long v) { return FpRatFunc::constant(P5, v); };
    const int d = 3;

    // delta and the b/f/c numerators, written independently.
    FpRatFunc delta_direct = k(2 * d) * A0 * A2 - k(d - 1) * A1 * A1;
    CHECK(delta_direct == dlt);

    RiccatiCoeffs rc = riccati_coeffs(phi);
    CHECK(rc.b * dlt == k(d) * A0 * A0 * A2.ddt() -
                            k(d - 1) * A0 * A1 * A1.ddt() -
                            k(d) * A0 * A2 * A0.ddt() +
                            k(d - 1) * A1 * A1 * A0.ddt());
    CHECK(rc.f * dlt == k(d * d) * A0 * A0 * A2.ddt() -
                            k(d * (d - 1)) * A0 * A1 * A1.ddt() -
                            k(d * (d - 2)) * A0 * A2 * A0.ddt() +
                            k(d * (d - 2) + 1) * A1 * A1 * A0.ddt());
    CHECK(rc.c * dlt == A0 * A1 * A2.ddt() - k(2) * A0 * A2 * A1.ddt() +
                            A1 * A2 * A0.ddt());
    CHECK(rc.g == A2 * rc.c - A3 * rc.f + A3.ddt());
  }
}

TEST_CASE("theorem condition checker") {
  // Single worked map passes: b - f = -1/t != 0, delta = t != 0, 3*3 != 0 mod 5.
  ConditionReport pass = check_riccati_condition({cubic_tx()});
  CHECK(pass.pass);

  // Constant-coefficient maps fail on b - f = 0 (phi = psi pair included).
  FpPolySelfMap constant = FpPolySelfMap::make(
      3, {rf(P5, {1}), rf(P5, {0}), rf(P5, {1}), rf(P5, {0})});
  ConditionReport fail = check_riccati_condition({constant});
  CHECK(!fail.pass);
  CHECK(fail.reason == "b_phi - f_psi = 0");

  // Any map with p | d fails.
  FpPolySelfMap frob = FpPolySelfMap::make(
      5, {rf(P5, {1}), rf(P5, {0}), rf(P5, {0, 1}), rf(P5, {0}), rf(P5, {0}),
          rf(P5, {1})});
  ConditionReport fail2 = check_riccati_condition({cubic_tx(), frob});
  CHECK(!fail2.pass);

  // Failure reporting matches a recomputation of the product.
  ConditionReport mixed = check_riccati_condition({cubic_tx(), constant});
  CHECK(!mixed.pass);
  const FpPolySelfMap& phi = mixed.failing_i == 0 ? cubic_tx() : constant;
  const FpPolySelfMap& psi = mixed.failing_j == 0 ? cubic_tx() : constant;
  const bool product_zero =
      delta(phi).is_zero() || delta(psi).is_zero() ||
      (riccati_coeffs(phi).b - riccati_coeffs(psi).f).is_zero();
  CHECK(product_zero);
}

TEST_CASE("random coefficient tuples pass the condition with high frequency") {
  RngStream rng(2718);
  int passes = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<FpPolySelfMap> maps;
    bool valid = true;
    for (int m = 0; m < 2 && valid; ++m) {
      std::vector<FpRatFunc> coeffs;
      for (int i = 0; i < 4; ++i) {
        std::vector<std::uint64_t> num(2 + rng.next_below(2));
        for (auto& c : num) c = rng.next_below(P5);
        coeffs.push_back(rf(P5, num));
      }
      if (coeffs[0].is_zero()) {
        valid = false;
        break;
      }
      maps.push_back(FpPolySelfMap::make(3, coeffs));
    }
    if (!valid) continue;
    if (check_riccati_condition(maps).pass) ++passes;
  }
  CHECK(passes > trials / 2);
}
