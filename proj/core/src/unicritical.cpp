#include "stochdyn/unicritical.hpp"

#include <cmath>

#include "stochdyn/errors.hpp"

namespace stochdyn {

UnicriticalFamily UnicriticalFamily::geometric(long B, double r) {
  if (B < 1 || !(r > 0.0 && r < 1.0)) {
    throw InvalidSystemError("geometric family needs B >= 1 and r in (0,1)");
  }
  return UnicriticalFamily{B, Law::Geometric, r};
}

UnicriticalFamily UnicriticalFamily::poisson(long B, double lambda) {
  if (B < 1 || !(lambda > 0.0)) {
    throw InvalidSystemError("poisson family needs B >= 1 and lambda > 0");
  }
  return UnicriticalFamily{B, Law::Poisson, lambda};
}

double UnicriticalFamily::degree_mass(int d) const {
  if (d < 2) return 0.0;
  const int k = d - 2;
  if (law == Law::Geometric) {
    return (1.0 - param) * std::pow(param, k);
  }
  double term = std::exp(-param);
  for (int i = 1; i <= k; ++i) term *= param / i;
  return term;
}

double UnicriticalFamily::mass(int d, const Int& c) const {
  if (abs(c) > B) return 0.0;
  return degree_mass(d) / static_cast<double>(2 * B + 1);
}

std::pair<int, Int> UnicriticalFamily::sample(RngStream& rng) const {
  const double u = rng.next_unit();
  double cum = 0.0;
  double term = law == Law::Geometric ? (1.0 - param) : std::exp(-param);
  // CDF walk; the cap is unreachable in practice and keeps the draw total.
  int d = 2 + 4096;
  for (int k = 0; k < 4096; ++k) {
    cum += term;
    if (u < cum) {
      d = 2 + k;
      break;
    }
    term *= law == Law::Geometric ? param : param / (k + 1);
  }
  const long span = 2 * B + 1;
  Int c(static_cast<long>(rng.next_below(static_cast<std::uint64_t>(span))) - B);
  return {d, std::move(c)};
}

RationalMapLift UnicriticalFamily::map_for(int d, const Int& c) const {
  return RationalMapLift::unicritical(d, c);
}

double UnicriticalFamily::height_control() const {
  return std::log(2.0 * static_cast<double>(B));
}

double family_d_nu(const UnicriticalFamily& family, double eps) {
  if (!(eps > 0)) {
    throw InvalidSystemError("family_d_nu needs eps > 0");
  }
  double partial = 0.0;
  for (int D = 2;; ++D) {
    partial += family.degree_mass(D) / D;
    double tail;
    if (family.law == UnicriticalFamily::Law::Geometric) {
      // sum_{d>D} m(d)/d <= r^(D-1)/(D+1)
      tail = std::pow(family.param, D - 1) / (D + 1);
    } else {
      // ratio bound once D exceeds lambda
      if (static_cast<double>(D) <= family.param) continue;
      const double next = family.degree_mass(D + 1);
      tail = next / (D + 1) / (1.0 - family.param / (D + 1));
    }
    if (partial <= 0) continue;
    const double lo = 1.0 / (partial + tail);
    const double hi = 1.0 / partial;
    if ((hi - lo) / 2 <= eps) {
      return (hi + lo) / 2;
    }
    if (D > 100000) {
      throw BudgetExceededError("family_d_nu series did not certify");
    }
  }
}

} // namespace stochdyn
