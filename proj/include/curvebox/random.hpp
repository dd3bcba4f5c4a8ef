#pragma once

#include <cstdint>

#include "curvebox/arith.hpp"
#include "curvebox/gon.hpp"

namespace curvebox {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed here instead of <random> so
/// instance streams are reproducible across platforms and languages:
///   state += 0x9e3779b97f4a7c15
///   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection of the biased top slice.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

/// a_0..a_{d-1} uniform in [0, q); a_d redrawn until gcd(a_d, q) = 1.
ModPoly random_poly(SplitMix64& rng, std::int64_t q, int d);

/// next_prime(u) for u uniform in [lo, hi], or prev_prime(u) if that overshoots.
std::int64_t random_prime(SplitMix64& rng, std::int64_t lo, std::int64_t hi);

/// n x n integer basis with entries in [-bound, bound], redrawn until nonsingular.
IntegerLattice random_lattice(SplitMix64& rng, int n, std::int64_t bound);

/// SupBox weights p/r with p, r uniform in [1, 5].
WeightedBody random_box(SplitMix64& rng, int n);

}  // namespace curvebox
