#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochdyn/generating_system.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/number.hpp"

namespace stochdyn {

// Orbit of P along a finite word, entry n holding gamma_n . P = a_n/b_n
// in lowest terms with b_n > 0.  Stops early (flag set) at 0 or infinity.
struct OrbitTable {
  struct Entry {
    int n;
    Int a;
    Int b;
  };
  std::vector<Entry> entries; // consecutive from n = 1
  bool hit_zero = false;
  bool hit_infinity = false;
};

OrbitTable orbit(const GeneratingSystem& sys, const Word& word,
                 const ProjectivePoint& P,
                 std::uint64_t bit_budget = kDefaultBitBudget);

// |a_n| with every prime dividing an earlier numerator removed, computed
// by iterated gcd stripping (no factorization).  A prime divides the
// result iff it is a primitive prime divisor of gamma_n . P.
Int primitive_part(const OrbitTable& table, int n);

// Z(gamma,P) up to the horizon: indices whose entry has no primitive
// prime divisor, i.e. |r_n| = 1 (covering the unit numerator case).
struct ZsigmondyReport {
  int horizon = 0;
  std::vector<int> members;
  std::vector<Int> primitive_parts; // r_1 .. r_horizon
};

ZsigmondyReport zsigmondy_set(const GeneratingSystem& sys, const Word& word,
                              const ProjectivePoint& P, int horizon,
                              std::uint64_t bit_budget = kDefaultBitBudget);

// Horizon-bounded good-pair test.  Bad needs a certificate (0/infinity
// hit, or expected height certified zero); Good needs both orbits clean
// up to the horizon and a certified positive lower bound on the
// canonical height; anything else is honestly Inconclusive, because the
// defining conditions quantify over the infinite orbit.  The relaxed
// mode drops the 0/infinity orbit conditions and tests positivity of
// the height alone; no finiteness claim is attached to it.
enum class GoodPairStatus { Good, Bad, Inconclusive };
enum class GoodPairMode { Strict, Relaxed };
struct GoodPairResult {
  GoodPairStatus status = GoodPairStatus::Inconclusive;
  std::string reason;
  double height_lower_bound = 0;
};

GoodPairResult good_pair_check(const GeneratingSystem& sys, const Word& word,
                               const ProjectivePoint& P, int horizon,
                               double eps,
                               std::uint64_t bit_budget = kDefaultBitBudget,
                               GoodPairMode mode = GoodPairMode::Strict);

// Per-map check of the number-field primitive-prime-divisor hypotheses:
// the affine numerator has degree >= 4 and nonzero discriminant.
struct PrimdivHypothesis {
  bool degree_ok = false;
  bool disc_ok = false;
  bool pass = false;
};
std::vector<PrimdivHypothesis> check_primdiv_hypotheses(
    const std::vector<RationalMapLift>& maps);

} // namespace stochdyn
