#pragma once

// Monte Carlo for the LIS tails: naive and likelihood-ratio estimators,
// empirical rate curves, and the conditional concentration experiment.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lisdev/model.hpp"
#include "lisdev/variational.hpp"

namespace lisdev {

enum class TailSide {
  lower,  // L < threshold * sqrt(n)
  upper,  // L >= threshold * sqrt(n)
};

bool tail_event(std::size_t length, double threshold, std::size_t n, TailSide side);

struct TailEstimate {
  double p_hat = 0.0;
  double log_p_hat = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  double effective_sample_size = 0.0;
  TailSide side = TailSide::lower;
  double threshold = 0.0;
  std::size_t n = 0;
};

/// Fraction of trials on the requested side; trial t samples with
/// derive_seed(seed, t).
TailEstimate estimate_tail(const Density& density, std::size_t n, double threshold, TailSide side,
                           std::size_t trials, std::uint64_t seed);

/// Samples from nu and averages prod p/q times the indicator; unbiased for the
/// mu-probability. Rejects a tilt that vanishes where mu has mass.
TailEstimate estimate_tail_tilted(const Density& mu, const Density& nu, std::size_t n, double threshold,
                                  TailSide side, std::size_t trials, std::uint64_t seed);

enum class RateMode { exact, monte_carlo };

struct RatePoint {
  std::size_t n = 0;
  double probability = 0.0;
  double rate = 0.0;  // -(1/n) log P lower, -(1/sqrt n) log P upper
  bool infinite = false;  // P estimated as 0
  double analytic_limit = 0.0;  // 2 H0(c) or U_mu(c); NaN when unknown
};

struct RateCurveConfig {
  RateMode mode = RateMode::exact;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  /// J for the threshold (2J + c) sqrt(n); 1 for the uniform density.
  double jbar = 1.0;
};

/// Exact mode needs the uniform density and n within the tableaux cap.
std::vector<RatePoint> empirical_rate_curve(const Density& density, TailSide side, double c,
                                            std::span<const std::size_t> n_list, const RateCurveConfig& config);

struct ConcentrationConfig {
  std::size_t accepted_target = 200;
  std::size_t max_attempts = 50'000'000;
  std::uint64_t seed = 0;
  double jbar = 1.0;  // the solver's j_high
  std::vector<double> quantiles{0.1, 0.25, 0.5, 0.75, 0.9};
};

struct ConcentrationSummary {
  std::size_t n = 0;
  double c = 0.0;
  std::size_t threshold_length = 0;  // smallest L with L >= (2 jbar + c) sqrt(n)
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  double acceptance_rate = 0.0;
  double predicted_acceptance = 0.0;  // exp(-sqrt(n) U_mu(c))
  std::vector<double> distances;      // per accepted sample, in attempt order
  std::vector<std::pair<double, double>> quantiles;  // (level, distance)
};

/// Rejection-samples the event L >= (2 jbar + c) sqrt(n) and records, for each
/// accepted sample, min over reference curves of max over witness points of
/// |y - phi(x)|. Rejects when exp(-sqrt(n) U_mu(c)) < 1e-4.
ConcentrationSummary concentration_experiment(const Density& density, std::size_t n, double c,
                                              std::span<const BlockCurve> reference_curves,
                                              const ConcentrationConfig& config);

/// Distance of a witness chain to the nearest reference curve.
double witness_distance(std::span<const Point> witness, std::span<const BlockCurve> reference_curves);

}  // namespace lisdev
