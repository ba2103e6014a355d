#pragma once

#include <cstdint>

namespace swj {

// Deterministic generator with counter-based stream splitting: fork(k) yields an
// independent stream derived from the root seed, so parallel trials reproduce
// the serial results regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed), state_(mix(seed)) {}

  std::uint64_t nextU64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds
  int uniformInt(int lo, int hi) {
    return lo + static_cast<int>(nextU64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (nextU64() & 1u) != 0; }

  Rng fork(std::uint64_t stream) const { return Rng(mix(root_ ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL))); }

  std::uint64_t rootSeed() const { return root_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t root_;
  std::uint64_t state_;
};

}  // namespace swj
