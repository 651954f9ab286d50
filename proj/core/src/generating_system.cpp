#include "stochdyn/generating_system.hpp"

#include <algorithm>

#include "stochdyn/errors.hpp"

namespace stochdyn {

GeneratingSystem GeneratingSystem::make(std::vector<RationalMapLift> maps,
                                        std::vector<Rat> weights) {
  if (maps.empty()) {
    throw InvalidSystemError("generating system needs at least one map");
  }
  if (maps.size() != weights.size()) {
    throw InvalidSystemError("one weight per map required");
  }
  Rat total(0);
  bool strictly_positive = true;
  for (Rat& w : weights) {
    w.canonicalize();
    if (w < 0) {
      throw InvalidSystemError("weights must be nonnegative");
    }
    if (w == 0) strictly_positive = false;
    total += w;
  }
  if (total != 1) {
    throw InvalidSystemError("weights must sum to exactly 1, got " +
                             total.get_str());
  }
  GeneratingSystem sys;
  sys.maps_ = std::move(maps);
  sys.weights_ = std::move(weights);
  sys.strictly_positive_ = strictly_positive;
  sys.min_degree_ = sys.maps_[0].degree();
  sys.max_degree_ = sys.maps_[0].degree();
  sys.height_control_ = 0;
  for (const RationalMapLift& phi : sys.maps_) {
    sys.min_degree_ = std::min(sys.min_degree_, phi.degree());
    sys.max_degree_ = std::max(sys.max_degree_, phi.degree());
    sys.height_control_ = std::max(sys.height_control_,
                                   phi.height_control().c_phi);
  }
  return sys;
}

GeneratingSystem GeneratingSystem::uniform(std::vector<RationalMapLift> maps) {
  const std::size_t n = maps.size();
  std::vector<Rat> w(n, Rat(1, static_cast<unsigned long>(n)));
  return make(std::move(maps), std::move(w));
}

Int prefix_degree(const GeneratingSystem& sys, const Word& word) {
  Int deg(1);
  for (int i : word) {
    deg *= sys.map(i).degree();
  }
  return deg;
}

Rat prefix_weight(const GeneratingSystem& sys, const Word& word) {
  Rat w(1);
  for (int i : word) {
    w *= sys.weights()[static_cast<std::size_t>(i)];
  }
  return w;
}

Rat d_nu(const GeneratingSystem& sys) {
  Rat sum(0);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    sum += sys.weights()[i] / Rat(sys.maps()[i].degree());
  }
  return 1 / sum;
}

Rat nu_star_weight(const GeneratingSystem& sys, const Word& word) {
  Rat dn = d_nu(sys);
  Rat scale(1);
  for (std::size_t i = 0; i < word.size(); ++i) scale *= dn;
  return prefix_weight(sys, word) / Rat(prefix_degree(sys, word)) * scale;
}

std::vector<std::pair<Word, Rat>> enumerate_prefixes(
    const GeneratingSystem& sys, int n, std::uint64_t budget) {
  if (n < 0) {
    throw InvalidSystemError("word length must be nonnegative");
  }
  double count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<double>(sys.size());
  if (count > static_cast<double>(budget)) {
    throw BudgetExceededError("enumeration of |S|^n words exceeds budget");
  }
  std::vector<std::pair<Word, Rat>> out;
  out.reserve(static_cast<std::size_t>(count));
  Word word(static_cast<std::size_t>(n), 0);
  std::function<void(int, Rat)> rec = [&](int depth, Rat weight) {
    if (depth == n) {
      out.emplace_back(word, weight);
      return;
    }
    for (std::size_t i = 0; i < sys.size(); ++i) {
      word[static_cast<std::size_t>(depth)] = static_cast<int>(i);
      rec(depth + 1, weight * sys.weights()[i]);
    }
  };
  rec(0, Rat(1));
  return out;
}

int sample_index(const GeneratingSystem& sys, RngStream& rng) {
  // u = k/2^53 is an exact rational, so the CDF walk is exact.
  const unsigned long k = static_cast<unsigned long>(rng.next_bits53());
  Rat u = Rat(Int(k)) / Rat(Int(1) << 53);
  Rat cum(0);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    cum += sys.weights()[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(sys.size()) - 1;
}

Word sample_prefix(const GeneratingSystem& sys, int n, RngStream& rng) {
  Word out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = sample_index(sys, rng);
  }
  return out;
}

Word shift_word(const Word& word, int m) {
  if (m < 0) {
    throw InvalidSystemError("shift amount must be nonnegative");
  }
  if (static_cast<std::size_t>(m) >= word.size()) return {};
  return Word(word.begin() + m, word.end());
}

PeriodicPath::PeriodicPath(const GeneratingSystem& sys, Word pattern)
    : sys_(&sys), pattern_(std::move(pattern)) {
  if (pattern_.empty()) {
    throw InvalidSystemError("periodic word needs a nonempty pattern");
  }
  for (int i : pattern_) {
    if (i < 0 || static_cast<std::size_t>(i) >= sys.size()) {
      throw InvalidSystemError("word index out of range");
    }
  }
}

const RationalMapLift& PeriodicPath::next() {
  const RationalMapLift& phi = sys_->map(pattern_[pos_]);
  pos_ = (pos_ + 1) % pattern_.size();
  return phi;
}

FixedPath::FixedPath(const GeneratingSystem& sys, Word word)
    : sys_(&sys), word_(std::move(word)) {
  for (int i : word_) {
    if (i < 0 || static_cast<std::size_t>(i) >= sys.size()) {
      throw InvalidSystemError("word index out of range");
    }
  }
}

const RationalMapLift& FixedPath::next() {
  if (pos_ >= word_.size()) {
    throw WordExhaustedError("fixed word exhausted before convergence");
  }
  return sys_->map(word_[pos_++]);
}

SampledPath::SampledPath(const GeneratingSystem& sys, RngStream rng)
    : sys_(&sys), rng_(rng) {}

const RationalMapLift& SampledPath::next() {
  return sys_->map(sample_index(*sys_, rng_));
}

WordSpec WordSpec::periodic(Word pattern) {
  WordSpec spec;
  spec.kind = Kind::Periodic;
  spec.pattern = std::move(pattern);
  return spec;
}

WordSpec WordSpec::sampled(std::uint64_t seed, std::uint64_t stream) {
  WordSpec spec;
  spec.kind = Kind::Sampled;
  spec.seed = seed;
  spec.stream = stream;
  return spec;
}

std::unique_ptr<PathSource> WordSpec::make(const GeneratingSystem& sys) const {
  if (kind == Kind::Periodic) {
    return std::make_unique<PeriodicPath>(sys, pattern);
  }
  return std::make_unique<SampledPath>(sys, RngStream(seed, stream));
}

Word WordSpec::prefix(const GeneratingSystem& sys, int n) const {
  Word out;
  out.reserve(static_cast<std::size_t>(n));
  if (kind == Kind::Periodic) {
    for (int i = 0; i < n; ++i) {
      out.push_back(pattern[static_cast<std::size_t>(i) % pattern.size()]);
    }
  } else {
    RngStream rng(seed, stream);
    for (int i = 0; i < n; ++i) {
      out.push_back(sample_index(sys, rng));
    }
  }
  return out;
}

} // namespace stochdyn
