#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace anonylink {

// Deterministic PRNG used everywhere randomness matters for reproducibility.
// splitmix64 seeds an xoshiro256** state; the bounded draw is rejection
// sampled so results are identical on every platform (std::uniform_int_distribution
// is implementation-defined and therefore unusable here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
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

  // Uniform in [0, n). n must be > 0.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + uniform(hi - lo + 1);
  }

  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (next_u64() & 1u) != 0; }

  // Number of failures before the first success, success probability p.
  std::uint32_t geometric(double p, std::uint32_t cap) {
    std::uint32_t k = 0;
    while (k < cap && unit() >= p) ++k;
    return k;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform(i)]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(v.size())];
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Derives an independent stream label from a base seed, for per-trial /
  // per-cell seeding.
  static std::uint64_t derive(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t x = base ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
    return splitmix64(x);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace anonylink
