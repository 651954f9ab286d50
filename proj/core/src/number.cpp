#include "stochdyn/number.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "stochdyn/errors.hpp"

namespace stochdyn {

double log_bigint(const Int& n) {
  if (n <= 0) {
    throw NonPositiveError("log_bigint requires a positive integer");
  }
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 53) {
    return std::log(n.get_d());
  }
  // n = (m + f) * 2^shift with m the top 53 bits and 0 <= f < 1, so
  // log n = log m + shift*log 2 + log(1 + f/m); the dropped term is
  // below 2^-52 and the float arithmetic stays within a few ulps.
  const long shift = static_cast<long>(bits) - 53;
  Int top = n >> shift;
  return std::log(top.get_d()) + static_cast<double>(shift) * M_LN2;
}

double log_abs(const Int& n) {
  if (n == 0) {
    throw NonPositiveError("log_abs undefined at zero");
  }
  Int a = abs(n);
  return log_bigint(a);
}

long valuation(const Int& p, const Int& n) {
  if (n == 0) {
    throw UndefinedAtZeroError("valuation undefined at zero");
  }
  Int reduced;
  return static_cast<long>(
      mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Int& p, const Rat& q) {
  if (q == 0) {
    throw UndefinedAtZeroError("valuation undefined at zero");
  }
  long v = 0;
  if (q.get_num() != 0) v += valuation(p, q.get_num());
  v -= valuation(p, q.get_den());
  return v;
}

ProjectivePoint normalize(Int x, Int y) {
  if (x == 0 && y == 0) {
    throw ZeroPointError("(0,0) does not define a projective point");
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  x /= g;
  y /= g;
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  return ProjectivePoint(std::move(x), std::move(y));
}

ProjectivePoint point_from_rational(const Rat& q) {
  return normalize(q.get_num(), q.get_den());
}

ProjectivePoint point_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    return normalize(Int(s), Int(1));
  }
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  return normalize(std::move(num), std::move(den));
}

std::string point_to_string(const ProjectivePoint& P) {
  return P.x.get_str() + "/" + P.y.get_str();
}

double weil_height(const ProjectivePoint& P) {
  Int ax = abs(P.x);
  Int m = ax > P.y ? ax : P.y;
  return log_bigint(m);
}

bool point_less(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return a.x * b.y < b.x * a.y;
}

std::size_t hash_int(const Int& n) {
  const mpz_srcptr z = n.get_mpz_t();
  const int size = z->_mp_size;
  std::size_t h = static_cast<std::size_t>(size) * 0x9e3779b97f4a7c15ULL;
  const int limbs = std::abs(size);
  for (int i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(z->_mp_d[i]) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t PointHash::operator()(const ProjectivePoint& P) const {
  std::size_t h = hash_int(P.x);
  h ^= hash_int(P.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) {
    throw InvalidSystemError("cannot parse rational: " + s);
  }
  if (q.get_den() == 0) {
    throw InvalidSystemError("zero denominator in rational: " + s);
  }
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

} // namespace stochdyn
