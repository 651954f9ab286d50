#include "stochdyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "stochdyn/errors.hpp"

namespace stochdyn {

StabilityVerdict stable_closure(const GeneratingSystem& sys,
                                const ProjectivePoint& P) {
  if (!sys.strictly_positive()) {
    throw InvalidSystemError("stable_closure requires strictly positive weights");
  }
  const double escape = system_constants(sys).escape_bound();

  StabilityVerdict verdict;
  if (weil_height(P) > escape) {
    verdict.finite = false;
    verdict.witness = P;
    verdict.witness_height = weil_height(P);
    return verdict;
  }

  struct Visited {
    std::size_t parent;
    int via_map;
  };
  std::vector<ProjectivePoint> points;
  std::vector<Visited> meta;
  std::unordered_map<ProjectivePoint, std::size_t, PointHash> index;
  std::deque<std::size_t> queue;

  points.push_back(P);
  meta.push_back({SIZE_MAX, -1});
  index.emplace(P, 0);
  queue.push_back(0);

  auto word_to = [&](std::size_t node) {
    Word word;
    while (meta[node].via_map >= 0) {
      word.push_back(meta[node].via_map);
      node = meta[node].parent;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  while (!queue.empty()) {
    const std::size_t current = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < sys.size(); ++i) {
      ProjectivePoint next = sys.maps()[i].apply(points[current]);
      if (index.contains(next)) continue;
      const double h = weil_height(next);
      if (h > escape) {
        verdict.finite = false;
        verdict.witness = next;
        verdict.witness_height = h;
        verdict.witness_word = word_to(current);
        verdict.witness_word.push_back(static_cast<int>(i));
        return verdict;
      }
      const std::size_t id = points.size();
      points.push_back(next);
      meta.push_back({current, static_cast<int>(i)});
      index.emplace(std::move(next), id);
      queue.push_back(id);
    }
  }

  verdict.finite = true;
  verdict.stable_set = std::move(points);
  std::sort(verdict.stable_set.begin(), verdict.stable_set.end(), point_less);
  return verdict;
}

bool is_expected_height_zero(const GeneratingSystem& sys,
                             const ProjectivePoint& P) {
  return stable_closure(sys, P).finite;
}

bool preperiodic_single(const RationalMapLift& phi, const ProjectivePoint& P) {
  const double escape = phi.height_control().c_phi / (phi.degree() - 1);
  std::unordered_set<ProjectivePoint, PointHash> seen;
  ProjectivePoint point = P;
  while (true) {
    if (weil_height(point) > escape) return false;
    if (!seen.insert(point).second) return true;
    point = phi.apply(point);
  }
}

std::vector<ProjectivePoint> kernel_probe(const GeneratingSystem& sys,
                                          double height_bound,
                                          const Int& denominator_bound,
                                          std::uint64_t budget) {
  if (height_bound < 0 || denominator_bound < 0) {
    return {};
  }
  Int coord_bound(static_cast<long>(std::floor(std::exp(height_bound))));
  Int max_den = denominator_bound < coord_bound ? denominator_bound : coord_bound;

  // Points in the box: (2*coord_bound+1) numerators per denominator.
  Rat box_size = Rat(2 * coord_bound + 1) * Rat(max_den + 1);
  if (box_size > Rat(Int(budget))) {
    throw BudgetExceededError("kernel_probe box exceeds the enumeration budget");
  }

  std::vector<ProjectivePoint> kernel;
  auto consider = [&](ProjectivePoint point) {
    if (stable_closure(sys, point).finite) {
      kernel.push_back(std::move(point));
    }
  };

  if (coord_bound >= 1) {
    consider(ProjectivePoint(Int(1), Int(0))); // infinity
  }
  for (Int b(1); b <= max_den; ++b) {
    for (Int a = -coord_bound; a <= coord_bound; ++a) {
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g != 1) continue;
      consider(ProjectivePoint(a, b));
    }
  }
  std::sort(kernel.begin(), kernel.end(), point_less);
  return kernel;
}

} // namespace stochdyn
