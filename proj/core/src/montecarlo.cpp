#include "lisdev/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lisdev/error.hpp"
#include "lisdev/lis.hpp"
#include "lisdev/parallel.hpp"
#include "lisdev/rates.hpp"
#include "lisdev/rng.hpp"
#include "lisdev/tableaux.hpp"

namespace lisdev {

bool tail_event(std::size_t length, double threshold, std::size_t n, TailSide side) {
  const double bound = threshold * std::sqrt(static_cast<double>(n));
  const auto l = static_cast<double>(length);
  return side == TailSide::lower ? l < bound : l >= bound;
}

namespace {

void check_tail_args(std::size_t n, double threshold, std::size_t trials) {
  if (n < 1) throw ValidationError("n must be positive");
  if (!(threshold > 0.0)) throw ValidationError("threshold must be positive");
  if (trials < 1) throw ValidationError("trials must be at least 1");
}

TailEstimate finish(std::span<const double> values, std::size_t n, double threshold, TailSide side) {
  const auto trials = static_cast<double>(values.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  TailEstimate out;
  out.trials = values.size();
  out.n = n;
  out.threshold = threshold;
  out.side = side;
  out.p_hat = sum / trials;
  out.log_p_hat = std::log(out.p_hat);
  const double variance = values.size() > 1 ? std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1.0)) : 0.0;
  out.std_error = std::sqrt(variance / trials);
  return out;
}

}  // namespace

TailEstimate estimate_tail(const Density& density, std::size_t n, double threshold, TailSide side,
                           std::size_t trials, std::uint64_t seed) {
  check_tail_args(n, threshold, trials);
  const DensitySampler sampler(density);
  std::vector<double> hits(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    std::vector<Point> points;
    sampler.draw(n, derive_seed(seed, t), points);
    hits[t] = tail_event(lis_size(points), threshold, n, side) ? 1.0 : 0.0;
  });
  TailEstimate out = finish(hits, n, threshold, side);
  // Binomial standard error.
  out.std_error = std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(trials));
  out.effective_sample_size = static_cast<double>(trials);
  return out;
}

TailEstimate estimate_tail_tilted(const Density& mu, const Density& nu, std::size_t n, double threshold,
                                  TailSide side, std::size_t trials, std::uint64_t seed) {
  check_tail_args(n, threshold, trials);
  const std::size_t m = nu.resolution();
  for (std::size_t iy = 0; iy < m; ++iy) {
    for (std::size_t ix = 0; ix < m; ++ix) {
      if (nu.value(ix, iy) > 0.0) continue;
      const double md = static_cast<double>(m);
      if (rectangle_mass(mu, ix / md, (ix + 1) / md, iy / md, (iy + 1) / md) > 0.0) {
        throw ValidationError("tilt density vanishes on cell (" + std::to_string(iy) + "," + std::to_string(ix) +
                              ") where mu has mass");
      }
    }
  }
  const DensitySampler sampler(nu);
  std::vector<double> weighted(trials, 0.0);
  std::vector<double> weights(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    std::vector<Point> points;
    sampler.draw(n, derive_seed(seed, t), points);
    double log_weight = 0.0;
    for (const Point& z : points) log_weight += std::log(mu.at(z.x, z.y)) - std::log(nu.at(z.x, z.y));
    weights[t] = std::exp(log_weight);
    weighted[t] = tail_event(lis_size(points), threshold, n, side) ? weights[t] : 0.0;
  });
  TailEstimate out = finish(weighted, n, threshold, side);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double w : weights) {
    sum += w;
    sum_sq += w * w;
  }
  out.effective_sample_size = sum_sq > 0.0 ? std::min(static_cast<double>(trials), sum * sum / sum_sq) : 0.0;
  return out;
}

std::vector<RatePoint> empirical_rate_curve(const Density& density, TailSide side, double c,
                                            std::span<const std::size_t> n_list, const RateCurveConfig& config) {
  if (n_list.empty()) throw ValidationError("n_list must be nonempty");
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) throw ValidationError("n_list must be increasing");
  }
  if (!(config.jbar > 0.0)) throw ValidationError("jbar must be positive");
  if (config.mode == RateMode::exact && !density.is_constant()) {
    throw ValidationError("exact rates need the uniform density");
  }
  if (config.mode == RateMode::exact && config.jbar != 1.0) {
    throw ValidationError("exact rates use jbar = 1");
  }
  const double threshold = 2.0 * config.jbar + c;
  if (!(threshold > 0.0)) throw ValidationError("threshold 2 jbar + c must be positive");

  double limit = std::numeric_limits<double>::quiet_NaN();
  if (side == TailSide::lower && density.is_constant() && c > -2.0 && c <= 0.0) limit = 2.0 * h0(c).value;
  if (side == TailSide::upper && c >= 0.0) limit = u_mu(c, config.jbar).value;

  std::vector<RatePoint> out;
  for (const std::size_t n : n_list) {
    RatePoint point;
    point.n = n;
    point.analytic_limit = limit;
    if (config.mode == RateMode::exact) {
      const Pmf pmf = exact_lmax_distribution(static_cast<int>(n));
      const double bound = threshold * std::sqrt(static_cast<double>(n));
      point.probability = side == TailSide::lower ? pmf.probability_below(bound) : pmf.probability_at_least(bound);
    } else {
      point.probability = estimate_tail(density, n, threshold, side, config.trials, derive_seed(config.seed, n)).p_hat;
    }
    const double speed = side == TailSide::lower ? static_cast<double>(n) : std::sqrt(static_cast<double>(n));
    if (point.probability > 0.0) {
      point.rate = -std::log(point.probability) / speed;
    } else {
      point.infinite = true;
      point.rate = std::numeric_limits<double>::infinity();
    }
    out.push_back(point);
  }
  return out;
}

double witness_distance(std::span<const Point> witness, std::span<const BlockCurve> reference_curves) {
  if (reference_curves.empty()) throw ValidationError("reference curves must be nonempty");
  double best = std::numeric_limits<double>::infinity();
  for (const BlockCurve& curve : reference_curves) {
    double worst = 0.0;
    for (const Point& z : witness) worst = std::max(worst, std::abs(z.y - curve(z.x)));
    best = std::min(best, worst);
  }
  return best;
}

namespace {

double quantile(const std::vector<double>& sorted, double level) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double position = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (position - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

ConcentrationSummary concentration_experiment(const Density& density, std::size_t n, double c,
                                              std::span<const BlockCurve> reference_curves,
                                              const ConcentrationConfig& config) {
  if (n < 1) throw ValidationError("n must be positive");
  if (!(c >= 0.0)) throw ValidationError("c must be nonnegative");
  if (reference_curves.empty()) throw ValidationError("reference curves must be nonempty");
  if (config.accepted_target < 1) throw ValidationError("accepted_target must be at least 1");

  ConcentrationSummary out;
  out.n = n;
  out.c = c;
  const double root = std::sqrt(static_cast<double>(n));
  out.predicted_acceptance = std::exp(-root * u_mu(c, config.jbar).value);
  if (out.predicted_acceptance < 1e-4) {
    throw ValidationError("predicted acceptance rate " + std::to_string(out.predicted_acceptance) +
                          " is below 1e-4; use a smaller c or n");
  }
  out.threshold_length = static_cast<std::size_t>(std::ceil((2.0 * config.jbar + c) * root));

  const DensitySampler sampler(density);
  constexpr std::size_t kBatch = 8192;
  std::vector<double> batch_distance(kBatch);
  while (out.accepted < config.accepted_target && out.attempts < config.max_attempts) {
    const std::size_t begin = out.attempts;
    const std::size_t count = std::min(kBatch, config.max_attempts - begin);
    parallel_for(count, [&](std::size_t k) {
      std::vector<Point> points;
      sampler.draw(n, derive_seed(config.seed, begin + k), points);
      batch_distance[k] = -1.0;
      if (lis_size(points) < out.threshold_length) return;
      const LisResult lis = lis_length(points);
      std::vector<Point> witness;
      for (const std::size_t index : lis.witness) witness.push_back(points[index]);
      batch_distance[k] = witness_distance(witness, reference_curves);
    });
    for (std::size_t k = 0; k < count; ++k) {
      ++out.attempts;
      if (batch_distance[k] >= 0.0) {
        out.distances.push_back(batch_distance[k]);
        if (++out.accepted == config.accepted_target) break;
      }
    }
  }
  out.acceptance_rate = static_cast<double>(out.accepted) / static_cast<double>(out.attempts);
  std::vector<double> sorted = out.distances;
  std::sort(sorted.begin(), sorted.end());
  for (const double level : config.quantiles) out.quantiles.emplace_back(level, quantile(sorted, level));
  return out;
}

}  // namespace lisdev
