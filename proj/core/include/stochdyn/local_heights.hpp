#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stochdyn/binary_form.hpp"
#include "stochdyn/generating_system.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/number.hpp"

namespace stochdyn {

// An absolute value of Q: the archimedean one or a p-adic one.  All
// local degrees are 1 over Q.
struct Place {
  bool archimedean = true;
  Int p;

  static Place arch() { return Place{true, Int(0)}; }
  static Place prime(Int prime) { return Place{false, std::move(prime)}; }

  std::string to_string() const {
    return archimedean ? "inf" : p.get_str();
  }
  friend bool operator==(const Place& a, const Place& b) {
    return a.archimedean == b.archimedean && (a.archimedean || a.p == b.p);
  }
};

struct GreenValue {
  double value = 0;
  double error = 0;
};

// Homogeneous integer divisor form E; degree(E) many points of P^1.
struct DivisorForm {
  BinaryForm E;

  static DivisorForm make(BinaryForm form);
  int degree() const { return E.degree(); }
};

// One-step norm bound at v: |log||phi~(x,y)||_v - d log||(x,y)||_v|
// <= c for all (x,y) != 0 (archimedean) resp. all p-normalized integer
// pairs (p-adic, where c = v_p(Res) log p and good primes give 0).
double place_control_constant(const Place& v, const RationalMapLift& phi);
double place_control_constant(const Place& v, const GeneratingSystem& sys);

// Green function of the lifted word at v: log||(x,y)||_v plus the
// renormalized series sum_k log m_k / deg(gamma_k), stopped when the
// per-place tail c_v/(deg(alpha-1)) reaches eps.  Archimedean steps run
// on unit-max-norm doubles; p-adic steps keep exact integer pairs and
// strip only powers of p.
GreenValue green(const Place& v, const GeneratingSystem& sys, PathSource& path,
                 const Int& x, const Int& y, double eps,
                 std::uint64_t bit_budget = kDefaultBitBudget);
GreenValue green(const Place& v, const GeneratingSystem& sys,
                 const WordSpec& word, const Int& x, const Int& y, double eps,
                 std::uint64_t bit_budget = kDefaultBitBudget);

// Same series truncated at exactly `depth` letters of a fixed word.
GreenValue green_at_depth(const Place& v, const GeneratingSystem& sys,
                          const Word& word, const Int& x, const Int& y,
                          std::uint64_t bit_budget = kDefaultBitBudget);

// lambda-hat = deg(E) * Green - log|E(x,y)|_v on the canonical
// representative; OnDivisorError when E(P) = 0.
GreenValue local_canonical_height(const Place& v, const GeneratingSystem& sys,
                                  const WordSpec& word, const DivisorForm& E,
                                  const ProjectivePoint& P, double eps,
                                  std::uint64_t bit_budget = kDefaultBitBudget);

// Per-place contributions over the support (archimedean, bad primes,
// primes of E(P)) together with the certified comparison against the
// canonical height computed on the reduced orbit.
struct Decomposition {
  std::vector<std::pair<Place, GreenValue>> contributions;
  double sum = 0;            // (1/deg E) * sum of contributions
  double sum_error = 0;
  HeightEstimate canonical;  // independent route
  double residual = 0;       // |sum - canonical.value|
  double combined_error = 0;
};
Decomposition decompose(const GeneratingSystem& sys, const WordSpec& word,
                        const DivisorForm& E, const ProjectivePoint& P,
                        double eps,
                        std::uint64_t bit_budget = kDefaultBitBudget);

// nu_n-weighted average of per-word local heights at depth `depth`
// (exact enumeration), certified by the weighted local tail.
GreenValue expected_local_height_exact(
    const Place& v, const GeneratingSystem& sys, const DivisorForm& E,
    const ProjectivePoint& P, int depth,
    std::uint64_t enum_budget = kDefaultEnumBudget,
    std::uint64_t bit_budget = kDefaultBitBudget);

// Monte Carlo version; radius is a Hoeffding half-width plus eps_inner.
GreenValue expected_local_height_mc(const Place& v, const GeneratingSystem& sys,
                                    const DivisorForm& E,
                                    const ProjectivePoint& P,
                                    const McOptions& opts);

// Sample Pearson correlation of the local heights at two places over
// random words, or Degenerate when a marginal variance sits below
// 10*eps_inner (no resolvable randomness at that tolerance).
struct DependenceProbe {
  bool degenerate = false;
  double correlation = 0;
  double variance_v1 = 0;
  double variance_v2 = 0;
  std::int64_t samples = 0;
};
DependenceProbe dependence_probe(const GeneratingSystem& sys, const Place& v1,
                                 const Place& v2, const DivisorForm& E,
                                 const ProjectivePoint& P, std::int64_t samples,
                                 std::uint64_t seed, double eps_inner,
                                 std::uint64_t bit_budget = kDefaultBitBudget);

} // namespace stochdyn
