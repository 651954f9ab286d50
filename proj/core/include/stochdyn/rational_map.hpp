#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stochdyn/binary_form.hpp"
#include "stochdyn/number.hpp"

namespace stochdyn {

// |weil_height(phi(P)) - d*weil_height(P)| <= c_phi for every P in P^1(Q).
// c_upper comes from coefficient norms, c_lower from an exact cofactor
// identity A1*F + B1*G = Res*x^(2d-1) (and the y-twin); the bound is an
// upper estimate for the paper-style optimal constant, not its infimum.
struct HeightControlCertificate {
  double c_upper = 0;
  double c_lower = 0;
  double c_phi = 0;
};

// A degree-d self-map of P^1 as a primitive pair of integer forms
// (F, G) of formal degree d with Res(F,G) != 0.  Maps are entered in
// affine form (numerator/denominator coefficient lists in z, ascending)
// and homogenized here.  Immutable after construction.
class RationalMapLift {
public:
  static RationalMapLift from_affine(std::vector<Int> numerator,
                                     std::vector<Int> denominator);
  static RationalMapLift from_forms(BinaryForm F, BinaryForm G);

  // z^d + c.
  static RationalMapLift unicritical(int d, const Int& c);

  int degree() const { return degree_; }
  const BinaryForm& numerator() const { return F_; }
  const BinaryForm& denominator() const { return G_; }
  const Int& resultant() const { return resultant_; }
  const HeightControlCertificate& height_control() const { return control_; }

  // Canonical representative of phi(P); the unreduced image pair is
  // divided by its content first.
  ProjectivePoint apply(const ProjectivePoint& P) const;

  // (F(x,y), G(x,y)) with no reduction at all.
  std::pair<Int, Int> apply_raw(const Int& x, const Int& y) const;

  // Affine numerator F(z,1) as ascending coefficients (for the
  // primitive-prime-divisor hypothesis checks).
  std::vector<Int> affine_numerator() const { return F_.coeffs; }

  std::string to_string() const;

  friend bool operator==(const RationalMapLift& a, const RationalMapLift& b) {
    return a.F_ == b.F_ && a.G_ == b.G_;
  }

private:
  RationalMapLift() = default;

  int degree_ = 0;
  BinaryForm F_, G_;
  Int resultant_;
  HeightControlCertificate control_;
};

// psi compose phi (apply phi first), as a primitive lift of degree
// deg(phi)*deg(psi).  Intended for short words; orbit computation
// iterates apply instead.
RationalMapLift compose(const RationalMapLift& phi, const RationalMapLift& psi);

// All primes dividing some Res(F_phi, G_phi), phi in S.
std::set<Int> bad_primes(const std::vector<RationalMapLift>& maps);

} // namespace stochdyn
