#pragma once

#include <cstdint>
#include <utility>

#include "stochdyn/number.hpp"
#include "stochdyn/rational_map.hpp"
#include "stochdyn/rng.hpp"

namespace stochdyn {

// The infinite family { z^d + c : d >= 2, |c| <= B } with a product law:
// degrees follow Geometric(r) or Poisson(lambda) shifted to start at 2,
// and c is uniform on the 2B+1 integers.  Height controlled with
// constant log(2B) on rational basepoints.
struct UnicriticalFamily {
  enum class Law { Geometric, Poisson };

  long B = 1;
  Law law = Law::Geometric;
  double param = 0.5; // r in (0,1), or lambda > 0

  static UnicriticalFamily geometric(long B, double r);
  static UnicriticalFamily poisson(long B, double lambda);

  // nu_1(phi_{d,c}) = degree_mass(d)/(2B+1).
  double mass(int d, const Int& c) const;
  // Mass of the whole degree class d (summed over c).
  double degree_mass(int d) const;

  std::pair<int, Int> sample(RngStream& rng) const;
  RationalMapLift map_for(int d, const Int& c) const;

  double height_control() const; // log(2B)
  int min_degree() const { return 2; }
};

// (sum_{d>=2} degree_mass(d)/d)^-1 with the series tail certified <= eps.
double family_d_nu(const UnicriticalFamily& family, double eps);

} // namespace stochdyn
