#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lisdev/error.hpp"
#include "lisdev/lis.hpp"
#include "lisdev/parallel.hpp"
#include "lisdev/tableaux.hpp"

namespace lisdev {

double Pmf::total() const {
  double sum = 0.0;
  for (const double p : probability) sum += p;
  return sum;
}

double Pmf::mean() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < probability.size(); ++k) sum += static_cast<double>(k) * probability[k];
  return sum;
}

double Pmf::probability_below(double t) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < probability.size() && static_cast<double>(k) < t; ++k) sum += probability[k];
  return sum;
}

double Pmf::probability_at_least(double t) const {
  double sum = 0.0;
  for (std::size_t k = probability.size(); k-- > 0;) {
    if (static_cast<double>(k) < t) break;
    sum += probability[k];
  }
  return sum;
}

namespace {

// Running log(sum exp(w_i)) with Neumaier-compensated mantissa sum.
class LogSumAccumulator {
 public:
  void add(double log_weight) {
    if (log_weight > max_) {
      const double scale = std::isinf(max_) ? 0.0 : std::exp(max_ - log_weight);
      sum_ *= scale;
      compensation_ *= scale;
      max_ = log_weight;
    }
    const double term = std::exp(log_weight - max_);
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  double total() const { return std::isinf(max_) ? 0.0 : std::exp(max_) * (sum_ + compensation_); }
  double log_total() const { return max_ + std::log(sum_ + compensation_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Fills rows[j] = number of columns longer than j.
void row_lengths(std::span<const int> columns, std::vector<int>& rows) {
  rows.assign(static_cast<std::size_t>(columns.front()), 0);
  for (const int c : columns) {
    for (int j = 0; j < c; ++j) ++rows[static_cast<std::size_t>(j)];
  }
}

template <typename Fn>
void for_each_hook(std::span<const int> columns, const std::vector<int>& rows, Fn&& fn) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int base = columns[i] - static_cast<int>(i) - 1;
    for (int j = 0; j < columns[i]; ++j) fn(base + rows[static_cast<std::size_t>(j)] - j);
  }
}

Pmf exact_rational_pmf(int n) {
  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<std::uint64_t>(k);

  std::vector<std::uint64_t> dim_squared_sum(static_cast<std::size_t>(n) + 1, 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t slot) {
    const int k = static_cast<int>(slot) + 1;
    std::vector<int> rows;
    std::uint64_t sum = 0;
    for_each_shape_with_first_column(n, k, [&](std::span<const int> columns) {
      row_lengths(columns, rows);
      std::uint64_t hook_product = 1;
      for_each_hook(columns, rows, [&](int hook) { hook_product *= static_cast<std::uint64_t>(hook); });
      const std::uint64_t dimension = factorial / hook_product;
      sum += dimension * dimension;
    });
    dim_squared_sum[static_cast<std::size_t>(k)] = sum;
  });

  Pmf pmf;
  pmf.mode = Arithmetic::exact_rational;
  pmf.exact.resize(static_cast<std::size_t>(n) + 1);
  pmf.probability.resize(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    pmf.exact[k] = Rational(BigInt(dim_squared_sum[k]), BigInt(factorial));
    pmf.probability[k] = static_cast<double>(dim_squared_sum[k]) / static_cast<double>(factorial);
  }
  return pmf;
}

Pmf log_domain_pmf(int n) {
  std::vector<double> log_table(2 * static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t h = 1; h < log_table.size(); ++h) log_table[h] = std::log(static_cast<double>(h));
  const double log_factorial = std::lgamma(static_cast<double>(n) + 1.0);

  std::vector<double> probability(static_cast<std::size_t>(n) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t slot) {
    const int k = static_cast<int>(slot) + 1;
    std::vector<int> rows;
    LogSumAccumulator acc;
    for_each_shape_with_first_column(n, k, [&](std::span<const int> columns) {
      row_lengths(columns, rows);
      double log_pi = 0.0;
      for_each_hook(columns, rows, [&](int hook) { log_pi += log_table[static_cast<std::size_t>(hook)]; });
      acc.add(log_factorial - 2.0 * log_pi);
    });
    probability[static_cast<std::size_t>(k)] = acc.total();
  });

  Pmf pmf;
  pmf.mode = Arithmetic::log_domain;
  pmf.probability = std::move(probability);
  return pmf;
}

}  // namespace

Pmf exact_lmax_distribution(int n, int cap) {
  if (n < 0) throw ValidationError("n must be nonnegative");
  if (n > cap) {
    throw ValidationError("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap) +
                          " (" + std::to_string(partition_count(n)) + " shapes)");
  }
  if (n == 0) {
    Pmf pmf;
    pmf.mode = Arithmetic::exact_rational;
    pmf.probability = {1.0};
    pmf.exact = {Rational(1)};
    return pmf;
  }
  return n <= kExactArithmeticLimit ? exact_rational_pmf(n) : log_domain_pmf(n);
}

Pmf brute_force_lmax_distribution(int n) {
  if (n < 0 || n > 8) throw ValidationError("brute force is limited to 0 <= n <= 8");
  std::vector<int> permutation(static_cast<std::size_t>(n));
  std::iota(permutation.begin(), permutation.end(), 1);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t total = 0;
  do {
    ++counts[lmax_permutation(permutation).length];
    ++total;
  } while (std::next_permutation(permutation.begin(), permutation.end()));

  Pmf pmf;
  pmf.mode = Arithmetic::exact_rational;
  for (const std::uint64_t c : counts) {
    pmf.exact.emplace_back(BigInt(c), BigInt(total));
    pmf.probability.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return pmf;
}

Pmf poissonized_lmax_distribution(double intensity, double truncation_mass, int cap) {
  if (!(intensity >= 0.0)) throw ValidationError("intensity must be nonnegative");
  if (intensity > cap / 2.0) {
    throw ValidationError("intensity above cap/2 = " + std::to_string(cap / 2.0));
  }
  if (!(truncation_mass > 0.0 && truncation_mass <= 1e-6)) {
    throw ValidationError("truncation_mass must lie in (0, 1e-6]");
  }

  // Poisson weights far enough into the tail that the remainder is negligible.
  const auto horizon = static_cast<std::size_t>(intensity + 40.0 * std::sqrt(intensity) + 60.0);
  std::vector<double> weight(horizon + 1);
  for (std::size_t m = 0; m <= horizon; ++m) {
    const double md = static_cast<double>(m);
    weight[m] = intensity == 0.0 ? (m == 0 ? 1.0 : 0.0)
                                 : std::exp(-intensity + md * std::log(intensity) - std::lgamma(md + 1.0));
  }
  std::vector<double> tail(horizon + 2, 0.0);  // tail[m] = sum_{j >= m} weight[j]
  for (std::size_t m = horizon + 1; m-- > 0;) tail[m] = tail[m + 1] + weight[m];

  std::size_t last = 0;
  while (tail[last + 1] >= truncation_mass) ++last;
  if (last > static_cast<std::size_t>(cap)) {
    throw ValidationError("Poisson truncation needs n = " + std::to_string(last) + " above cap " +
                          std::to_string(cap) + "; use a smaller intensity");
  }

  Pmf pmf;
  pmf.mode = Arithmetic::log_domain;
  pmf.probability.assign(last + 1, 0.0);
  for (std::size_t m = 0; m <= last; ++m) {
    const Pmf conditional = exact_lmax_distribution(static_cast<int>(m), cap);
    for (std::size_t k = 0; k < conditional.probability.size(); ++k) {
      pmf.probability[k] += weight[m] * conditional.probability[k];
    }
  }
  pmf.truncation_residual = tail[last + 1];
  return pmf;
}

}  // namespace lisdev
