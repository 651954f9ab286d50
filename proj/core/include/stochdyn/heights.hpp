#pragma once

#include <cstdint>
#include <vector>

#include "stochdyn/generating_system.hpp"
#include "stochdyn/number.hpp"
#include "stochdyn/unicritical.hpp"

namespace stochdyn {

inline constexpr std::uint64_t kDefaultBitBudget = 1ull << 26;

// Interval semantics: the target lies in [value - error, value + error].
// Monte Carlo results flag themselves statistical; everything else is
// certified (tail bound plus the log-rounding floor).
struct HeightEstimate {
  double value = 0;
  double error = 0;
  bool statistical = false;
};

// C = sup of the per-map height-control constants, alpha = inf degree.
struct SystemConstants {
  double C = 0;
  int alpha = 2;
  double escape_bound() const { return C / (alpha - 1); }
};

SystemConstants system_constants(const GeneratingSystem& sys);
SystemConstants system_constants(const UnicriticalFamily& family);

// h(gamma_n . P)/deg(gamma_n) at the first n whose tail bound
// C/(deg(gamma_n)(alpha-1)) drops to eps; the error is that tail,
// sharpened with the actual accumulated word degree.  Throws
// IterationCapError once the orbit coordinates exceed bit_budget bits.
HeightEstimate canonical_height(const SystemConstants& constants,
                                PathSource& path, const ProjectivePoint& P,
                                double eps,
                                std::uint64_t bit_budget = kDefaultBitBudget);

HeightEstimate canonical_height(const GeneratingSystem& sys,
                                const WordSpec& word, const ProjectivePoint& P,
                                double eps,
                                std::uint64_t bit_budget = kDefaultBitBudget);

// Along an i.i.d. draw from the unicritical family.
HeightEstimate canonical_height(const UnicriticalFamily& family,
                                std::uint64_t seed, const ProjectivePoint& P,
                                double eps,
                                std::uint64_t bit_budget = kDefaultBitBudget);

// Depth-n truncation of E_nu[h-hat](P) over all |S|^n words with exact
// weights; certified by the weighted tail at depth n.
HeightEstimate expected_height_exact(
    const GeneratingSystem& sys, const ProjectivePoint& P, int depth,
    std::uint64_t enum_budget = kDefaultEnumBudget,
    std::uint64_t bit_budget = kDefaultBitBudget);

struct McOptions {
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  double eps_inner = 1e-3;
  double delta_conf = 0.05;
  int threads = 1;
  std::uint64_t bit_budget = kDefaultBitBudget;
};

// Mean of per-path canonical heights; the radius is a Hoeffding
// half-width at confidence 1-delta_conf over the a-priori range
// 2C/(alpha-1), plus the per-path tolerance.  Deterministic for fixed
// (seed, samples) regardless of thread count.
HeightEstimate expected_height_mc(const GeneratingSystem& sys,
                                  const ProjectivePoint& P,
                                  const McOptions& opts);
HeightEstimate expected_height_mc(const UnicriticalFamily& family,
                                  const ProjectivePoint& P,
                                  const McOptions& opts);

double variance_estimate(const GeneratingSystem& sys, const ProjectivePoint& P,
                         std::int64_t samples, std::uint64_t seed,
                         double eps_inner,
                         std::uint64_t bit_budget = kDefaultBitBudget);
double variance_estimate(const UnicriticalFamily& family,
                         const ProjectivePoint& P, std::int64_t samples,
                         std::uint64_t seed, double eps_inner,
                         std::uint64_t bit_budget = kDefaultBitBudget);

// Both sides of E_{nu_k^*}[E[h-hat](gamma_k . P)] = d_nu^k E[h-hat](P)
// evaluated with depth-n truncations; contract: residual <= error.
struct TransformationCheck {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double combined_error = 0;
};
TransformationCheck transformation_check(
    const GeneratingSystem& sys, const ProjectivePoint& P, int k, int depth,
    std::uint64_t enum_budget = kDefaultEnumBudget,
    std::uint64_t bit_budget = kDefaultBitBudget);

} // namespace stochdyn
