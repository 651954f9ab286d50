#include "doctest.h"
#include "oracles.hpp"
#include "stochdyn/binary_form.hpp"
#include "stochdyn/rng.hpp"

using namespace stochdyn;

namespace {

BinaryForm form(std::vector<long> coeffs) {
  std::vector<Int> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return BinaryForm(std::move(c));
}

} // namespace

TEST_CASE("sylvester resultant matches the cofactor-expansion oracle") {
  // Frozen spec values first.
  CHECK(sylvester_resultant(form({0, 0, 1}), form({1, 0, 0})) == 1); // (x^2, y^2)
  CHECK(sylvester_resultant(form({1, 0, 1}), form({1, 0, 0})) == 1); // (x^2+y^2, y^2)
  CHECK(sylvester_resultant(form({0, 0, 2}), form({1, 0, 0})) == 4); // (2x^2, y^2)

  RngStream rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng.next_below(3));
    std::vector<Int> f, g;
    for (int i = 0; i <= d; ++i) {
      f.emplace_back(static_cast<long>(rng.next_below(11)) - 5);
      g.emplace_back(static_cast<long>(rng.next_below(11)) - 5);
    }
    const Int via_bareiss = sylvester_resultant(BinaryForm(f), BinaryForm(g));
    const Int via_cofactor = oracles::naive_determinant(oracles::sylvester_of(f, g));
    CHECK(via_bareiss == via_cofactor);
  }
}

TEST_CASE("cofactor identities hold exactly") {
  RngStream rng(17);
  int checked = 0;
  while (checked < 25) {
    const int d = 2 + static_cast<int>(rng.next_below(3));
    std::vector<Int> f, g;
    for (int i = 0; i <= d; ++i) {
      f.emplace_back(static_cast<long>(rng.next_below(9)) - 4);
      g.emplace_back(static_cast<long>(rng.next_below(9)) - 4);
    }
    BinaryForm F(f), G(g);
    Int res = sylvester_resultant(F, G);
    if (res == 0) continue;
    ++checked;
    CofactorIdentity cof = sylvester_cofactors(F, G, res);

    // Multiply out A1*F + B1*G and compare with res*x^(2d-1).
    auto check_identity = [&](const std::vector<Rat>& a,
                              const std::vector<Rat>& b, bool x_side) {
      std::vector<Rat> acc(2 * static_cast<std::size_t>(d), Rat(0));
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i <= d; ++i) {
          acc[static_cast<std::size_t>(i + j)] +=
              a[static_cast<std::size_t>(j)] * Rat(F.coeffs[static_cast<std::size_t>(i)]) +
              b[static_cast<std::size_t>(j)] * Rat(G.coeffs[static_cast<std::size_t>(i)]);
        }
      }
      for (std::size_t k = 0; k < acc.size(); ++k) {
        Rat expect(0);
        if (x_side && k == acc.size() - 1) expect = Rat(res);
        if (!x_side && k == 0) expect = Rat(res);
        CHECK(acc[k] == expect);
      }
    };
    check_identity(cof.a1, cof.b1, true);
    check_identity(cof.a2, cof.b2, false);

    // The solutions are adjugate rows, hence integral for r = Res.
    for (const auto* v : {&cof.a1, &cof.b1, &cof.a2, &cof.b2}) {
      for (const Rat& c : *v) {
        CHECK(c.get_den() == 1);
      }
    }
  }
}

TEST_CASE("univariate discriminants") {
  // x^4 + 1: nonzero (distinct roots).
  CHECK(discriminant({Int(1), Int(0), Int(0), Int(0), Int(1)}) != 0);
  // (x-1)^2 (x^2+1) = x^4 - 2x^3 + 2x^2 - 2x + 1: repeated root.
  CHECK(discriminant({Int(1), Int(-2), Int(2), Int(-2), Int(1)}) == 0);
  // x^2 - 1: disc = 4.
  CHECK(discriminant({Int(-1), Int(0), Int(1)}) == 4);
  // ax^2+bx+c has disc b^2-4ac.
  CHECK(discriminant({Int(5), Int(3), Int(2)}) == Int(9 - 40));
}

TEST_CASE("form evaluation and homogenize") {
  BinaryForm F = homogenize({Int(-1), Int(0), Int(1)}, 2); // z^2 - 1
  CHECK(F.eval(Int(3), Int(2)) == 5);  // 9 - 4
  CHECK(F.eval(Int(0), Int(1)) == -1);
  CHECK(F.eval_double(0.5, 1.0) == doctest::Approx(-0.75));
  CHECK(form_mul(F, F).eval(Int(3), Int(2)) == 25);
}
