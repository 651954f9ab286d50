#include "stochdyn/zsigmondy.hpp"

#include <algorithm>

#include "stochdyn/binary_form.hpp"
#include "stochdyn/errors.hpp"
#include "stochdyn/stability.hpp"

namespace stochdyn {

OrbitTable orbit(const GeneratingSystem& sys, const Word& word,
                 const ProjectivePoint& P, std::uint64_t bit_budget) {
  OrbitTable table;
  ProjectivePoint point = P;
  int n = 0;
  for (int idx : word) {
    point = sys.map(idx).apply(point);
    ++n;
    const std::uint64_t bits = mpz_sizeinbase(point.x.get_mpz_t(), 2) +
                               mpz_sizeinbase(point.y.get_mpz_t(), 2);
    if (bits > bit_budget) {
      throw IterationCapError("orbit exceeded the bit budget at n=" +
                              std::to_string(n));
    }
    table.entries.push_back({n, point.x, point.y});
    if (point.is_zero()) {
      table.hit_zero = true;
      break;
    }
    if (point.is_infinity()) {
      table.hit_infinity = true;
      break;
    }
  }
  return table;
}

Int primitive_part(const OrbitTable& table, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > table.entries.size()) {
    throw InvalidSystemError("orbit entry out of range");
  }
  const Int& a_n = table.entries[static_cast<std::size_t>(n - 1)].a;
  if (a_n == 0) {
    throw ZeroNumeratorError("primitive part undefined at a zero numerator");
  }
  Int r = abs(a_n);
  for (int m = 1; m < n; ++m) {
    const Int& a_m = table.entries[static_cast<std::size_t>(m - 1)].a;
    if (a_m == 0) continue;
    // Peel every shared prime at its full multiplicity in r.
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), a_m.get_mpz_t());
    while (g > 1) {
      r /= g;
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
    }
  }
  return r;
}

ZsigmondyReport zsigmondy_set(const GeneratingSystem& sys, const Word& word,
                              const ProjectivePoint& P, int horizon,
                              std::uint64_t bit_budget) {
  if (static_cast<int>(word.size()) < horizon) {
    throw InvalidSystemError("word shorter than the requested horizon");
  }
  Word prefix(word.begin(), word.begin() + horizon);
  OrbitTable table = orbit(sys, prefix, P, bit_budget);
  if (table.hit_zero || table.hit_infinity ||
      static_cast<int>(table.entries.size()) < horizon) {
    throw OrbitDegenerateError("orbit hits 0 or infinity before the horizon");
  }
  ZsigmondyReport report;
  report.horizon = horizon;
  for (int n = 1; n <= horizon; ++n) {
    Int r = primitive_part(table, n);
    if (r == 1) {
      report.members.push_back(n);
    }
    report.primitive_parts.push_back(std::move(r));
  }
  return report;
}

GoodPairResult good_pair_check(const GeneratingSystem& sys, const Word& word,
                               const ProjectivePoint& P, int horizon,
                               double eps, std::uint64_t bit_budget,
                               GoodPairMode mode) {
  GoodPairResult out;
  if (horizon < 1 || static_cast<int>(word.size()) < horizon) {
    throw InvalidSystemError("good_pair_check needs a word covering the horizon");
  }
  if (P.is_infinity()) {
    out.status = GoodPairStatus::Bad;
    out.reason = "basepoint at infinity";
    return out;
  }
  Word prefix(word.begin(), word.begin() + horizon);
  if (mode == GoodPairMode::Strict) {
    OrbitTable of_P = orbit(sys, prefix, P, bit_budget);
    if (of_P.hit_zero || of_P.hit_infinity) {
      out.status = GoodPairStatus::Bad;
      out.reason = of_P.hit_zero ? "0 lies in the orbit of P"
                                 : "infinity lies in the orbit of P";
      return out;
    }
    OrbitTable of_zero = orbit(sys, prefix, ProjectivePoint(Int(0), Int(1)),
                               bit_budget);
    if (of_zero.hit_zero || of_zero.hit_infinity) {
      out.status = GoodPairStatus::Bad;
      out.reason = of_zero.hit_zero ? "0 returns to the orbit of 0"
                                    : "infinity lies in the orbit of 0";
      return out;
    }
  }

  // Certified vanishing of the expected height forces h-hat_gamma = 0
  // for every word, so the pair is bad regardless of gamma.
  const bool certified_zero = sys.size() == 1
                                  ? preperiodic_single(sys.map(0), P)
                                  : is_expected_height_zero(sys, P);
  if (certified_zero) {
    out.status = GoodPairStatus::Bad;
    out.reason = "canonical height certified zero (finite stable orbit)";
    return out;
  }

  // Positive lower bound valid for every infinite extension of the word:
  // h(gamma_n P)/deg - C/(deg (alpha-1)) at the best explored depth.
  // The point orbit is walked directly, so a relaxed-mode pass through
  // 0 or infinity does not cut the search short.
  const SystemConstants constants = system_constants(sys);
  double best = -1;
  Int deg(1);
  ProjectivePoint point = P;
  for (int n = 1; n <= horizon; ++n) {
    const RationalMapLift& phi = sys.map(prefix[static_cast<std::size_t>(n - 1)]);
    point = phi.apply(point);
    deg *= phi.degree();
    const std::uint64_t bits = mpz_sizeinbase(point.x.get_mpz_t(), 2) +
                               mpz_sizeinbase(point.y.get_mpz_t(), 2);
    if (bits > bit_budget) {
      throw IterationCapError("good_pair_check exceeded the bit budget");
    }
    const double h = weil_height(point);
    best = std::max(best, (h - constants.C / (constants.alpha - 1)) / deg.get_d());
    if (best > eps) break;
  }
  out.height_lower_bound = best;
  if (best > 0) {
    out.status = GoodPairStatus::Good;
    out.reason = "orbits clean to the horizon and canonical height certified positive";
  } else {
    out.status = GoodPairStatus::Inconclusive;
    out.reason = "horizon too small to certify a positive canonical height";
  }
  return out;
}

std::vector<PrimdivHypothesis> check_primdiv_hypotheses(
    const std::vector<RationalMapLift>& maps) {
  std::vector<PrimdivHypothesis> out;
  out.reserve(maps.size());
  for (const RationalMapLift& phi : maps) {
    PrimdivHypothesis h;
    std::vector<Int> f = phi.affine_numerator();
    int deg = -1;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
      if (f[static_cast<std::size_t>(i)] != 0) {
        deg = i;
        break;
      }
    }
    h.degree_ok = deg >= 4;
    h.disc_ok = deg >= 1 && discriminant(f) != 0;
    h.pass = h.degree_ok && h.disc_ok;
    out.push_back(h);
  }
  return out;
}

} // namespace stochdyn
