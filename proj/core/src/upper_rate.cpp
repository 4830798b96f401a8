#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "lisdev/error.hpp"
#include "lisdev/rates.hpp"
#include "lisdev/rng.hpp"
#include "lisdev/variational.hpp"

namespace lisdev {

CrossCheckError::CrossCheckError(double closed, double numeric_value)
    : std::runtime_error("numeric minimizer " + std::to_string(numeric_value) + " disagrees with closed form " +
                         std::to_string(closed)),
      closed_form(closed),
      numeric(numeric_value) {}

namespace {

double objective(std::span<const double> w, const std::vector<double>& t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * u0(t[i]).value;
  return sum;
}

// Pairwise coordinate descent on {t >= 0, sum w_i t_i = c}. Each move keeps
// w_i t_i + w_k t_k fixed and minimizes the convex pair objective.
std::vector<double> descend(std::span<const double> w, std::vector<double> t) {
  const std::size_t n = w.size();
  double current = objective(w, t);
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double budget = w[i] * t[i] + w[k] * t[k];
        if (budget <= 0.0) continue;
        const auto pair = [&](double ti) {
          const double tk = std::max(0.0, (budget - w[i] * ti) / w[k]);
          return w[i] * u0(ti).value + w[k] * u0(tk).value;
        };
        const auto found = boost::math::tools::brent_find_minima(pair, 0.0, budget / w[i], 52);
        if (found.second < pair(t[i])) {
          t[i] = found.first;
          t[k] = std::max(0.0, (budget - w[i] * t[i]) / w[k]);
        }
      }
    }
    const double next = objective(w, t);
    if (current - next <= 1e-15 * std::max(1.0, current)) break;
    current = next;
  }
  return t;
}

}  // namespace

UpperRateResult discrete_upper_rate(std::span<const double> rho, double c, std::uint64_t seed) {
  if (rho.empty()) throw ValidationError("rho must be nonempty");
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("c must be finite and nonnegative");
  std::vector<double> w;
  for (const double r : rho) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("block masses must be positive");
    w.push_back(std::sqrt(r));
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);

  UpperRateResult out;
  out.value = total * u0(c / total).value;
  out.profile.t.assign(w.size(), c / total);
  out.profile.objective = out.value;

  if (c == 0.0) {
    out.numeric_value = 0.0;
    out.numeric_profile.assign(w.size(), 0.0);
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t start = 0; start < 10; ++start) {
    CounterRng rng(seed, start);
    std::vector<double> t(w.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      t[i] = rng.uniform();
      scale += w[i] * t[i];
    }
    for (double& v : t) v *= c / scale;
    t = descend(w, std::move(t));
    const double value = objective(w, t);
    if (value < best) {
      best = value;
      out.numeric_profile = t;
    }
  }
  out.numeric_value = best;
  if (std::abs(best - out.value) > 1e-6) throw CrossCheckError(out.value, best);
  return out;
}

FluctuationProfile optimal_fluctuation_profile(double jbar, double c) {
  if (!(jbar > 0.0)) throw ValidationError("jbar must be positive");
  if (!(c >= 0.0)) throw ValidationError("c must be nonnegative");
  FluctuationProfile out;
  out.t = {c / jbar};
  out.support = jbar;
  out.objective = u_mu(c, jbar).value;
  return out;
}

}  // namespace lisdev
