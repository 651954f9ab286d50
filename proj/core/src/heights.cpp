#include "stochdyn/heights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "stochdyn/errors.hpp"

namespace stochdyn {

namespace {

double rounding_floor(double value) {
  return (1.0 + std::abs(value)) * kLogRelativeError;
}

void check_bits(const ProjectivePoint& P, std::uint64_t bit_budget) {
  const std::uint64_t bits = mpz_sizeinbase(P.x.get_mpz_t(), 2) +
                             mpz_sizeinbase(P.y.get_mpz_t(), 2);
  if (bits > bit_budget) {
    throw IterationCapError("orbit coordinates exceeded the bit budget");
  }
}

// i.i.d. draws from the family, with lift construction memoized: the
// mass concentrates on few (d,c) pairs and certificates are not free.
class FamilyPath final : public PathSource {
public:
  FamilyPath(const UnicriticalFamily& family, RngStream rng)
      : family_(&family), rng_(rng) {}

  const RationalMapLift& next() override {
    auto [d, c] = family_->sample(rng_);
    const auto key = std::make_pair(d, c.get_si());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, family_->map_for(d, c)).first;
    }
    return it->second;
  }

private:
  const UnicriticalFamily* family_;
  RngStream rng_;
  std::map<std::pair<int, long>, RationalMapLift> cache_;
};

HeightEstimate mc_mean(const std::function<double(std::int64_t)>& path_value,
                       const SystemConstants& constants, const McOptions& opts) {
  if (opts.samples < 1) {
    throw InvalidSystemError("expected_height_mc needs samples >= 1");
  }
  if (!(opts.delta_conf > 0 && opts.delta_conf < 1)) {
    throw InvalidSystemError("confidence parameter must lie in (0,1)");
  }
  const std::int64_t n = opts.samples;
  std::vector<double> values(static_cast<std::size_t>(n));
  const int workers =
      std::max(1, std::min<int>(opts.threads,
                                static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = path_value(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> cursor{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const std::int64_t i = cursor.fetch_add(1);
          if (i >= n) break;
          values[static_cast<std::size_t>(i)] = path_value(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  // Fixed-order reduction keeps the result identical across worker counts.
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  const double range = 2.0 * constants.escape_bound();
  const double half =
      range * std::sqrt(std::log(2.0 / opts.delta_conf) / (2.0 * static_cast<double>(n)));
  HeightEstimate out;
  out.value = mean;
  out.error = half + opts.eps_inner + rounding_floor(mean);
  out.statistical = true;
  return out;
}

double sample_variance(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(n - 1);
}

} // namespace

SystemConstants system_constants(const GeneratingSystem& sys) {
  return SystemConstants{sys.height_control(), sys.min_degree()};
}

SystemConstants system_constants(const UnicriticalFamily& family) {
  return SystemConstants{family.height_control(), family.min_degree()};
}

HeightEstimate canonical_height(const SystemConstants& constants,
                                PathSource& path, const ProjectivePoint& P,
                                double eps, std::uint64_t bit_budget) {
  if (!(eps > 0)) {
    throw InvalidSystemError("canonical_height needs eps > 0");
  }
  ProjectivePoint point = P;
  Int deg(1);
  while (true) {
    const double tail = constants.C / (deg.get_d() * (constants.alpha - 1));
    if (tail <= eps) {
      const double value = weil_height(point) / deg.get_d();
      return HeightEstimate{value, tail + rounding_floor(value), false};
    }
    const RationalMapLift& phi = path.next();
    point = phi.apply(point);
    deg *= phi.degree();
    check_bits(point, bit_budget);
  }
}

HeightEstimate canonical_height(const GeneratingSystem& sys,
                                const WordSpec& word, const ProjectivePoint& P,
                                double eps, std::uint64_t bit_budget) {
  auto path = word.make(sys);
  return canonical_height(system_constants(sys), *path, P, eps, bit_budget);
}

HeightEstimate canonical_height(const UnicriticalFamily& family,
                                std::uint64_t seed, const ProjectivePoint& P,
                                double eps, std::uint64_t bit_budget) {
  FamilyPath path(family, RngStream(seed));
  return canonical_height(system_constants(family), path, P, eps, bit_budget);
}

HeightEstimate expected_height_exact(const GeneratingSystem& sys,
                                     const ProjectivePoint& P, int depth,
                                     std::uint64_t enum_budget,
                                     std::uint64_t bit_budget) {
  if (depth < 0) {
    throw InvalidSystemError("depth must be nonnegative");
  }
  double words = 1;
  for (int i = 0; i < depth; ++i) words *= static_cast<double>(sys.size());
  if (words > static_cast<double>(enum_budget)) {
    throw BudgetExceededError("expected_height_exact: |S|^depth exceeds the budget");
  }
  const SystemConstants constants = system_constants(sys);
  double value = 0;
  double tail = 0;
  // Depth-first over the word tree so shared prefixes are evaluated once;
  // leaf visit order is fixed, hence so is the floating-point sum.
  std::function<void(const ProjectivePoint&, int, const Rat&, const Int&)> rec =
      [&](const ProjectivePoint& point, int level, const Rat& weight,
          const Int& deg) {
        if (level == depth) {
          const double w = weight.get_d();
          value += w * (weil_height(point) / deg.get_d());
          tail += w * constants.C / (deg.get_d() * (constants.alpha - 1));
          return;
        }
        for (std::size_t i = 0; i < sys.size(); ++i) {
          ProjectivePoint next = sys.maps()[i].apply(point);
          check_bits(next, bit_budget);
          rec(next, level + 1, weight * sys.weights()[i],
              deg * sys.maps()[i].degree());
        }
      };
  rec(P, 0, Rat(1), Int(1));
  return HeightEstimate{value, tail + rounding_floor(value), false};
}

HeightEstimate expected_height_mc(const GeneratingSystem& sys,
                                  const ProjectivePoint& P,
                                  const McOptions& opts) {
  const SystemConstants constants = system_constants(sys);
  auto one_path = [&](std::int64_t i) {
    SampledPath path(sys, RngStream(opts.seed, static_cast<std::uint64_t>(i)));
    return canonical_height(constants, path, P, opts.eps_inner, opts.bit_budget)
        .value;
  };
  return mc_mean(one_path, constants, opts);
}

HeightEstimate expected_height_mc(const UnicriticalFamily& family,
                                  const ProjectivePoint& P,
                                  const McOptions& opts) {
  const SystemConstants constants = system_constants(family);
  auto one_path = [&](std::int64_t i) {
    FamilyPath path(family, RngStream(opts.seed, static_cast<std::uint64_t>(i)));
    return canonical_height(constants, path, P, opts.eps_inner, opts.bit_budget)
        .value;
  };
  return mc_mean(one_path, constants, opts);
}

double variance_estimate(const GeneratingSystem& sys, const ProjectivePoint& P,
                         std::int64_t samples, std::uint64_t seed,
                         double eps_inner, std::uint64_t bit_budget) {
  if (samples < 2) {
    throw InvalidSystemError("variance_estimate needs samples >= 2");
  }
  const SystemConstants constants = system_constants(sys);
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    SampledPath path(sys, RngStream(seed, static_cast<std::uint64_t>(i)));
    values[static_cast<std::size_t>(i)] =
        canonical_height(constants, path, P, eps_inner, bit_budget).value;
  }
  return sample_variance(values);
}

double variance_estimate(const UnicriticalFamily& family,
                         const ProjectivePoint& P, std::int64_t samples,
                         std::uint64_t seed, double eps_inner,
                         std::uint64_t bit_budget) {
  if (samples < 2) {
    throw InvalidSystemError("variance_estimate needs samples >= 2");
  }
  const SystemConstants constants = system_constants(family);
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    FamilyPath path(family, RngStream(seed, static_cast<std::uint64_t>(i)));
    values[static_cast<std::size_t>(i)] =
        canonical_height(constants, path, P, eps_inner, bit_budget).value;
  }
  return sample_variance(values);
}

TransformationCheck transformation_check(const GeneratingSystem& sys,
                                         const ProjectivePoint& P, int k,
                                         int depth, std::uint64_t enum_budget,
                                         std::uint64_t bit_budget) {
  if (k < 1) {
    throw InvalidSystemError("transformation_check needs k >= 1");
  }
  const HeightEstimate base = expected_height_exact(sys, P, depth, enum_budget,
                                                    bit_budget);
  const Rat dn = d_nu(sys);
  Rat dnk(1);
  for (int i = 0; i < k; ++i) dnk *= dn;

  double lhs = 0;
  double lhs_error = 0;
  for (const auto& [word, weight] : enumerate_prefixes(sys, k, enum_budget)) {
    ProjectivePoint moved = P;
    for (int idx : word) moved = sys.map(idx).apply(moved);
    const Rat star = nu_star_weight(sys, word);
    const HeightEstimate inner =
        expected_height_exact(sys, moved, depth, enum_budget, bit_budget);
    lhs += star.get_d() * inner.value;
    lhs_error += star.get_d() * inner.error;
  }
  const double rhs = dnk.get_d() * base.value;
  const double rhs_error = dnk.get_d() * base.error;

  TransformationCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs);
  out.combined_error = lhs_error + rhs_error + rounding_floor(lhs) +
                       rounding_floor(rhs);
  return out;
}

} // namespace stochdyn
