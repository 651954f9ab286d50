#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "stochdyn/number.hpp"
#include "stochdyn/rational_map.hpp"
#include "stochdyn/rng.hpp"

namespace stochdyn {

// A word over S: indices into the map list, applied left to right.
using Word = std::vector<int>;

inline constexpr std::uint64_t kDefaultEnumBudget = 2'000'000;

// The pair (S, nu_1): finitely many maps with exact rational weights
// summing to one.  Weights and all word measures below stay exact;
// floating point enters only through heights.
class GeneratingSystem {
public:
  static GeneratingSystem make(std::vector<RationalMapLift> maps,
                               std::vector<Rat> weights);
  // Uniform weights 1/|S|.
  static GeneratingSystem uniform(std::vector<RationalMapLift> maps);

  const std::vector<RationalMapLift>& maps() const { return maps_; }
  const std::vector<Rat>& weights() const { return weights_; }
  std::size_t size() const { return maps_.size(); }
  const RationalMapLift& map(int i) const {
    return maps_[static_cast<std::size_t>(i)];
  }

  bool strictly_positive() const { return strictly_positive_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }
  // Largest height-control constant over S.
  double height_control() const { return height_control_; }

private:
  std::vector<RationalMapLift> maps_;
  std::vector<Rat> weights_;
  bool strictly_positive_ = false;
  int min_degree_ = 0;
  int max_degree_ = 0;
  double height_control_ = 0;
};

Int prefix_degree(const GeneratingSystem& sys, const Word& word);
Rat prefix_weight(const GeneratingSystem& sys, const Word& word);

// (sum_phi nu_1(phi)/deg(phi))^-1, exact.
Rat d_nu(const GeneratingSystem& sys);

// nu_k(word)/deg(word) * d_nu^k, exact.
Rat nu_star_weight(const GeneratingSystem& sys, const Word& word);

// All |S|^n words with exact product weights (sum is exactly 1).
std::vector<std::pair<Word, Rat>> enumerate_prefixes(
    const GeneratingSystem& sys, int n,
    std::uint64_t budget = kDefaultEnumBudget);

// One i.i.d. index draw per nu_1; exact inverse-CDF on 53-bit uniforms.
int sample_index(const GeneratingSystem& sys, RngStream& rng);
Word sample_prefix(const GeneratingSystem& sys, int n, RngStream& rng);

Word shift_word(const Word& word, int m);

// Supplies the maps of an infinite composition sequence on demand.
class PathSource {
public:
  virtual ~PathSource() = default;
  virtual const RationalMapLift& next() = 0;
};

// Cycles through a fixed pattern forever.
class PeriodicPath final : public PathSource {
public:
  PeriodicPath(const GeneratingSystem& sys, Word pattern);
  const RationalMapLift& next() override;

private:
  const GeneratingSystem* sys_;
  Word pattern_;
  std::size_t pos_ = 0;
};

// Finite word; throws WordExhaustedError past the end.
class FixedPath final : public PathSource {
public:
  FixedPath(const GeneratingSystem& sys, Word word);
  const RationalMapLift& next() override;

private:
  const GeneratingSystem* sys_;
  Word word_;
  std::size_t pos_ = 0;
};

// i.i.d. draws from nu_1.
class SampledPath final : public PathSource {
public:
  SampledPath(const GeneratingSystem& sys, RngStream rng);
  const RationalMapLift& next() override;

private:
  const GeneratingSystem* sys_;
  RngStream rng_;
};

// Value description of a word source, replayable at several places or
// tolerances: the same spec always reproduces the same infinite word.
struct WordSpec {
  enum class Kind { Periodic, Sampled };
  Kind kind = Kind::Periodic;
  Word pattern;        // Periodic
  std::uint64_t seed = 0;  // Sampled
  std::uint64_t stream = 0;

  static WordSpec periodic(Word pattern);
  static WordSpec sampled(std::uint64_t seed, std::uint64_t stream = 0);
  std::unique_ptr<PathSource> make(const GeneratingSystem& sys) const;
  // First n letters of the word this spec denotes.
  Word prefix(const GeneratingSystem& sys, int n) const;
};

} // namespace stochdyn
