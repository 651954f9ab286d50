#pragma once

#include <map>
#include <set>

#include "stochdyn/number.hpp"

namespace stochdyn {

bool is_probable_prime(const Int& n);

// Full factorization of |n| (n != 0) by trial division plus Pollard-Brent
// rho with probable-prime certification.  Suitable for resultants and
// divisor values of the sizes this library produces.
std::map<Int, int> factorize(const Int& n);

// Distinct primes dividing |n|; empty for |n| = 1.
std::set<Int> prime_support(const Int& n);

} // namespace stochdyn
