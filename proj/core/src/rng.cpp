#include "lisdev/rng.hpp"

#include <cmath>

namespace lisdev {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

namespace {

std::uint64_t poisson_inversion(CounterRng& rng, double mean) {
  const double u = rng.uniform();
  double term = std::exp(-mean);
  double cumulative = term;
  std::uint64_t k = 0;
  // The tail beyond mean + 40 sqrt(mean) + 40 is below double resolution.
  const double limit = mean + 40.0 * std::sqrt(mean) + 40.0;
  while (u > cumulative && static_cast<double>(k) < limit) {
    ++k;
    term *= mean / static_cast<double>(k);
    cumulative += term;
  }
  return k;
}

}  // namespace

std::uint64_t poisson_variate(CounterRng& rng, double mean) {
  constexpr double kChunk = 500.0;
  std::uint64_t total = 0;
  while (mean > kChunk) {
    total += poisson_inversion(rng, kChunk);
    mean -= kChunk;
  }
  if (mean > 0.0) total += poisson_inversion(rng, mean);
  return total;
}

}  // namespace lisdev
