#pragma once

#include <vector>

#include "stochdyn/number.hpp"

namespace stochdyn {

Int pow_int(const Int& base, long e);

// Homogeneous binary form of degree n: coeffs[i] multiplies x^i y^(n-i).
struct BinaryForm {
  std::vector<Int> coeffs;

  BinaryForm() = default;
  explicit BinaryForm(std::vector<Int> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;

  Int eval(const Int& x, const Int& y) const;
  double eval_double(double x, double y) const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.coeffs == b.coeffs;
  }
};

BinaryForm form_mul(const BinaryForm& a, const BinaryForm& b);
BinaryForm form_add(const BinaryForm& a, const BinaryForm& b);
BinaryForm form_scale(const BinaryForm& a, const Int& c);

// y^d * p(x/y) for a univariate p given by ascending coefficients.
BinaryForm homogenize(const std::vector<Int>& poly, int d);

// Determinant of an exact integer matrix (fraction-free elimination).
Int bareiss_determinant(std::vector<std::vector<Int>> m);

// Resultant of two binary forms of the same formal degree d, as the
// 2d x 2d Sylvester determinant.
Int sylvester_resultant(const BinaryForm& F, const BinaryForm& G);

// Exact solutions of A1*F + B1*G = r*x^(2d-1) and A2*F + B2*G = r*y^(2d-1)
// with deg A_i = deg B_i = d-1.  Solvable whenever r = Res(F,G) != 0;
// the solutions are rows of the adjugate, hence integral when r is the
// resultant, but they are solved and returned over Q.
struct CofactorIdentity {
  std::vector<Rat> a1, b1, a2, b2;
};
CofactorIdentity sylvester_cofactors(const BinaryForm& F, const BinaryForm& G,
                                     const Int& r);

// Resultant of univariate integer polynomials (ascending coefficients).
Int univariate_resultant(const std::vector<Int>& f, const std::vector<Int>& g);

// Discriminant of a univariate integer polynomial of degree >= 1:
// (-1)^(n(n-1)/2) Res(f, f') / lc(f), exact.
Int discriminant(const std::vector<Int>& f);

} // namespace stochdyn
