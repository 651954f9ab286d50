#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace stochdyn {

using Int = mpz_class;
using Rat = mpq_class;

// Relative error floor of all real-valued height outputs.  Exact
// integer data is rounded into binary64 through log_bigint, whose
// relative error stays below 2^-50; we budget 2^-40 so downstream
// certified radii can absorb the rounding unconditionally.
inline constexpr double kLogRelativeError = 0x1.0p-40;

// log(n) for n >= 1 via bit length plus top-mantissa correction.
// Works for integers of millions of bits without overflow.
double log_bigint(const Int& n);

// log|n| for n != 0.
double log_abs(const Int& n);

// Exponent of the prime p in n (n != 0).
long valuation(const Int& p, const Int& n);

// Exponent of p in a nonzero rational.
long valuation(const Int& p, const Rat& q);

// A point of P^1(Q) as a coprime, sign-normalized integer pair:
// gcd(x,y) = 1 and either y > 0 or (y = 0 and x = 1).  The
// normalization makes equality of points bitwise equality, so points
// can live in hash sets during closure searches.
struct ProjectivePoint {
  Int x;
  Int y;

  ProjectivePoint() : x(0), y(1) {}
  ProjectivePoint(Int px, Int py) : x(std::move(px)), y(std::move(py)) {}

  bool is_infinity() const { return y == 0; }
  bool is_zero() const { return x == 0; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) {
    return !(a == b);
  }
};

// Canonical representative of [x:y].  Throws ZeroPointError on (0,0).
ProjectivePoint normalize(Int x, Int y);

ProjectivePoint point_from_rational(const Rat& q);

// Parses "a/b", "a", or "1/0" (infinity).
ProjectivePoint point_from_string(const std::string& s);

// "a/b" with b > 0, or "1/0" for infinity.
std::string point_to_string(const ProjectivePoint& P);

// log max(|x|,|y|) on the canonical representative.
double weil_height(const ProjectivePoint& P);

// Rational order with infinity last; used for reproducible report sets.
bool point_less(const ProjectivePoint& a, const ProjectivePoint& b);

struct PointHash {
  std::size_t operator()(const ProjectivePoint& P) const;
};

std::size_t hash_int(const Int& n);

// Parses "p/q" or "p" into an exact rational (canonicalized).
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

} // namespace stochdyn
