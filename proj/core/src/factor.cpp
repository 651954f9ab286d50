#include "stochdyn/factor.hpp"

#include <algorithm>

#include "stochdyn/errors.hpp"
#include "stochdyn/rng.hpp"

namespace stochdyn {

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_brent(const Int& n, RngStream& rng) {
  // Brent's cycle variant of Pollard rho; n must be odd composite.
  while (true) {
    Int y(static_cast<unsigned long>(rng.next_below(1u << 30) + 1));
    Int c(static_cast<unsigned long>(rng.next_below(1u << 30) + 1));
    Int x, ys, q(1), g(1);
    const long m = 128;
    long r = 1;
    while (g == 1) {
      x = y;
      for (long i = 0; i < r; ++i) {
        y = (y * y + c) % n;
      }
      long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const long steps = std::min(m, r - k);
        for (long i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          if (diff < 0) diff = -diff;
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        Int diff = x - ys;
        if (diff < 0) diff = -diff;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
}

void factor_into(Int n, std::map<Int, int>& out, RngStream& rng) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

} // namespace

std::map<Int, int> factorize(const Int& n) {
  if (n == 0) {
    throw UndefinedAtZeroError("factorize undefined at zero");
  }
  std::map<Int, int> out;
  Int m = abs(n);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Int(p)];
      m /= p;
    }
  }
  unsigned long p = 17;
  while (p < 100000 && m > 1) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Int(p)];
      m /= p;
    } else {
      p += 2;
    }
  }
  if (m > 1) {
    RngStream rng(0x5eedf00dULL);
    factor_into(m, out, rng);
  }
  return out;
}

std::set<Int> prime_support(const Int& n) {
  std::set<Int> out;
  for (const auto& [p, e] : factorize(n)) {
    out.insert(p);
  }
  return out;
}

} // namespace stochdyn
