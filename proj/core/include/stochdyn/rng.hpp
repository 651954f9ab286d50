#pragma once

#include <cstdint>

namespace stochdyn {

// Reproducible generator with cheap substream derivation: every
// (master seed, stream index) pair yields an independent xoshiro256**
// stream seeded through splitmix64.  Results are identical across
// platforms and worker counts, which is what makes "same seed, same
// report bytes" a testable contract.
class RngStream {
public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0) {
    std::uint64_t x = master_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
    for (auto& word : state_) {
      word = splitmix64(x);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1) with exactly 53 random bits; k/2^53 is exactly
  // representable, so exact-rational CDF comparisons stay exact.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_bits53() { return next_u64() >> 11; }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

} // namespace stochdyn
