#ifndef COOLSCHED_RNG_HPP
#define COOLSCHED_RNG_HPP

#include <cstdint>

namespace coolsched {

/// SplitMix64: the fixed, portable generator behind every randomized routine
/// in this project. Identical (seed, inputs) must give identical results on
/// every platform, so nothing here may depend on std::random distributions.
///
/// Stream split rule: an independent sub-stream for trial/query i of a run
/// seeded with s is SplitMix64(split_seed(s, i)).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  static std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    g.next();
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace coolsched

#endif
