#pragma once

#include <cstdint>

namespace lisdev {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator. Word k of stream s under seed S is
///
///   mix64(mix64(S ^ mix64(s)) + k * 0x9e3779b97f4a7c15)
///
/// so any (seed, stream, counter) triple can be evaluated independently of
/// every other one. Sampling uses stream = point index, which makes samples
/// identical across thread counts and platforms.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream))) {}

  std::uint64_t next() {
    const std::uint64_t word = mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    ++counter_;
    return word;
  }

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for trial t of a Monte Carlo run started with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Stream id reserved for the Poisson point count.
inline constexpr std::uint64_t kCountStream = 0xffffffffffffffffULL;

/// Poisson(mean) variate by sequential inversion; means above 500 are split
/// into independent chunks whose counts are summed.
std::uint64_t poisson_variate(CounterRng& rng, double mean);

}  // namespace lisdev
