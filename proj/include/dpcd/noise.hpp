#pragma once

#include <cstdint>
#include <random>

namespace dpcd {

// SplitMix64 finalizer. Used for seed derivation and for order-independent
// keyed draws.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Source of Gaussian and Laplace noise driven by a 64-bit seed.
//
// The zeroed source returns 0 from every draw; running a mechanism on it
// yields the mechanism's noiseless output, which the tests compare against
// exact oracles. Sequential draws advance an internal engine; keyed draws
// are pure functions of (seed, key) so their values do not depend on the
// order in which tree nodes are first touched.
class NoiseSource {
 public:
  static NoiseSource seeded(uint64_t seed) { return NoiseSource(false, seed); }
  static NoiseSource zeroed() { return NoiseSource(true, 0); }

  bool is_zeroed() const { return zeroed_; }
  uint64_t seed() const { return seed_; }

  double gaussian(double stddev);
  double laplace(double scale);

  // Standard normal scaled by stddev, fully determined by (seed, key).
  double keyed_gaussian(uint64_t key, double stddev) const;

  // Independent child source identified by `salt`.
  NoiseSource fork(uint64_t salt) const;

 private:
  NoiseSource(bool zeroed, uint64_t seed);

  double uniform01();  // strictly inside (0, 1)

  bool zeroed_;
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dpcd
