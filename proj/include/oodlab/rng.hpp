#pragma once

#include <cstdint>
#include <random>

namespace oodlab {

// Seeded generator handed around explicitly; never a hidden global. Trial
// workers get independent streams via derive(), so results do not depend on
// scheduling order.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t u;
    do {
      u = next_u64();
    } while (u >= limit);
    return u % n;
  }

  // splitmix64 finalizer over (seed, index) gives well-separated substreams.
  static std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SampleRng derive(std::uint64_t index) const {
    return SampleRng(derive_seed(seed_, index));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace oodlab
