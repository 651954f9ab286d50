#pragma once

#include <cstdint>
#include <vector>

#include "stochdyn/generating_system.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/number.hpp"

namespace stochdyn {

// Outcome of the finite-stable-set decision.  Exactly one of the two
// branches is populated:
//  - finite: stable_set contains P, is closed under every map in S, and
//    every member has Weil height <= C/(alpha-1);
//  - positive: witness lies in the forward closure of P (witness_word
//    re-executes to it) and weil_height(witness) > C/(alpha-1).
struct StabilityVerdict {
  bool finite = false;
  std::vector<ProjectivePoint> stable_set; // sorted, finite case
  ProjectivePoint witness;
  double witness_height = 0;
  Word witness_word;
};

// Breadth-first closure of {P} under S.  If P lies in a finite S-stable
// set then every closure point Q has h-hat_psi(Q) = 0 for all words, so
// h(Q) <= C/(alpha-1); any explored point above that bound certifies
// positive expected height.  Points of bounded height over Q are finite
// in number, so the search always terminates.
StabilityVerdict stable_closure(const GeneratingSystem& sys,
                                const ProjectivePoint& P);

// True iff stable_closure is finite.  The answer does not depend on
// the weights (only strict positivity).
bool is_expected_height_zero(const GeneratingSystem& sys,
                             const ProjectivePoint& P);

// Single-map preperiodicity via cycle detection with the same certified
// escape bound, specialized to C_phi/(d-1).
bool preperiodic_single(const RationalMapLift& phi, const ProjectivePoint& P);

// All rational points in the box max(|x|,|y|) <= exp(height_bound),
// |y| <= denominator_bound (infinity included when 1 fits) whose
// stable closure is finite.
std::vector<ProjectivePoint> kernel_probe(
    const GeneratingSystem& sys, double height_bound,
    const Int& denominator_bound,
    std::uint64_t budget = kDefaultEnumBudget);

} // namespace stochdyn
