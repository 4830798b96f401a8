#include <doctest.h>

#include <functional>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lisdev/error.hpp"
#include "lisdev/rates.hpp"
#include "lisdev/variational.hpp"

using namespace lisdev;

namespace {

// mu([x0, x1] x [y0, y1]) summed cell by cell; x0, x1 inside one grid column.
double column_mass(const Density& d, double x0, double x1, double y0, double y1) {
  const std::size_t m = d.resolution();
  const auto ix = std::min(m - 1, static_cast<std::size_t>(0.5 * (x0 + x1) * static_cast<double>(m)));
  double sum = 0.0;
  for (std::size_t iy = 0; iy < m; ++iy) {
    const double lo = std::max(y0, static_cast<double>(iy) / static_cast<double>(m));
    const double hi = std::min(y1, static_cast<double>(iy + 1) / static_cast<double>(m));
    if (hi > lo) sum += (hi - lo) * d.value(ix, iy);
  }
  return (x1 - x0) * sum;
}

struct Brackets {
  double low;
  double high;
};

// Quadratic-transition dynamic programs over every predecessor height.
Brackets brute_force_brackets(const Density& d, std::size_t X, std::size_t R) {
  const double dx = 1.0 / static_cast<double>(X);
  const double dy = 1.0 / static_cast<double>(R);
  std::vector<double> f(R + 1, 0.0);
  std::vector<double> next(R + 1);
  for (std::size_t i = 0; i < X; ++i) {
    for (std::size_t r = 0; r <= R; ++r) {
      double best = -1.0;
      for (std::size_t q = 0; q <= r; ++q) {
        best = std::max(best, f[q] + std::sqrt(column_mass(d, i * dx, (i + 1) * dx, q * dy, r * dy)));
      }
      next[r] = best;
    }
    f = next;
  }
  const double low = *std::max_element(f.begin(), f.end());

  std::vector<double> g(R, 0.0);
  std::vector<double> g_next(R);
  for (std::size_t i = 0; i < X; ++i) {
    for (std::size_t j = 0; j < R; ++j) {
      double best = -1.0;
      for (std::size_t q = 0; q <= j; ++q) {
        best = std::max(best, g[q] + std::sqrt(column_mass(d, i * dx, (i + 1) * dx, q * dy, (j + 1) * dy)));
      }
      g_next[j] = best;
    }
    g = g_next;
  }
  return {low, *std::max_element(g.begin(), g.end())};
}

double chain_value(const Density& d, const std::vector<int>& h, std::size_t X, std::size_t R) {
  const double dx = 1.0 / static_cast<double>(X);
  const double dy = 1.0 / static_cast<double>(R);
  double v = 0.0;
  for (std::size_t i = 0; i < X; ++i) v += std::sqrt(column_mass(d, i * dx, (i + 1) * dx, h[i] * dy, h[i + 1] * dy));
  return v;
}

// All nondecreasing height sequences, lexicographic order.
void enumerate_chains(std::vector<int>& h, std::size_t pos, int R, const std::function<void()>& visit) {
  if (pos == h.size()) {
    visit();
    return;
  }
  for (int r = pos == 0 ? 0 : h[pos - 1]; r <= R; ++r) {
    h[pos] = r;
    enumerate_chains(h, pos + 1, R, visit);
  }
}

Density random_density(std::mt19937_64& gen, std::size_t m) {
  std::uniform_real_distribution<double> dist(0.05, 3.0);
  std::vector<double> cells(m * m);
  for (double& c : cells) c = dist(gen);
  return make_grid_density(m, cells);
}

}  // namespace

TEST_CASE("functional on simple curves") {
  const Density u = uniform_density(4);
  CHECK(jbar_functional(u, MonotoneCurve({0.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jbar_functional(u, MonotoneCurve({0.3, 0.3, 0.3})) == 0.0);
  const auto square = MonotoneCurve::from_function([](double x) { return x * x; }, 4000);
  CHECK(jbar_functional(u, square) == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-4));

  // p = g(x) h(y) with g h = 3/4 on the diagonal.
  const Density prod = product_density(std::vector<double>{1.0, 3.0}, std::vector<double>{3.0, 1.0});
  CHECK(jbar_functional(prod, MonotoneCurve({0.0, 0.5, 1.0})) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  // Crossings of grid lines are split exactly.
  const Density strip = strip_depleted_density(5, 0.4, 0.5);
  const MonotoneCurve bent({0.0, 0.7, 0.8, 1.0});
  const auto fine = MonotoneCurve::from_function(bent, 3 * 20000);
  CHECK(jbar_functional(strip, bent) == doctest::Approx(jbar_functional(strip, fine)).epsilon(1e-4));

  CHECK_THROWS_AS(MonotoneCurve({0.5, 0.2}), ValidationError);
  CHECK_THROWS_AS(MonotoneCurve({0.5}), ValidationError);
}

TEST_CASE("solver brackets the uniform value") {
  const VariationalResult r = solve_jbar(uniform_density(8));
  CHECK(r.j_low <= 1.0 + 1e-12);
  CHECK(r.j_high >= 1.0 - 1e-12);
  CHECK(r.j_high - r.j_low < 0.01);
  CHECK(r.delta == 1.0 / 64.0);
  CHECK(r.best_curve.columns() == 64);

  double from_blocks = 0.0;
  for (const double w : block_masses(uniform_density(8), r.best_curve)) from_blocks += std::sqrt(w);
  CHECK(from_blocks == doctest::Approx(r.j_low).epsilon(1e-10));
}

TEST_CASE("solver brackets the value of explicit curves") {
  const Density prod = product_density(std::vector<double>{0.5, 1.0, 1.5, 2.0}, std::vector<double>{2.0, 1.0, 1.0, 0.5});
  const VariationalResult r = solve_jbar(prod, {1.0 / 32.0, 1.0 / 4096.0});
  CHECK(r.j_high >= jbar_functional(prod, MonotoneCurve({0.0, 1.0})));
  const auto curve = MonotoneCurve::from_function([](double x) { return std::pow(x, 1.7); }, 256);
  CHECK(r.j_high >= jbar_functional(prod, curve));
  CHECK(r.j_low <= r.j_high);
}

TEST_CASE("solver agrees with a brute-force dynamic program") {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 12; ++t) {
    const std::size_t m = 2 + gen() % 3;
    const Density d = random_density(gen, m);
    const std::size_t X = m * (1 + gen() % 3);
    const std::size_t R = X * (1 + gen() % 4);
    const VariationalResult r = solve_jbar(d, {1.0 / static_cast<double>(X), 1.0 / static_cast<double>(R)});
    const Brackets b = brute_force_brackets(d, X, R);
    CHECK(r.j_low == doctest::Approx(b.low).epsilon(1e-12));
    CHECK(r.j_high == doctest::Approx(b.high).epsilon(1e-12));
  }
  const PointSample s = rank_normalize(sample_iid(uniform_density(2), 12, 4));
  const double eps = min_gap(s);
  const Density smooth = smoothed_empirical_density(s, eps);
  const std::size_t X = smooth.resolution();
  const VariationalResult r = solve_jbar(smooth, {1.0 / static_cast<double>(X), 1.0 / static_cast<double>(X)});
  const Brackets b = brute_force_brackets(smooth, X, X);
  CHECK(r.j_low == doctest::Approx(b.low).epsilon(1e-12));
  CHECK(r.j_high == doctest::Approx(b.high).epsilon(1e-12));
}

TEST_CASE("ties resolve to the lexicographically smallest chain") {
  std::mt19937_64 gen(8);
  std::vector<Density> cases{make_grid_density(2, {0.2, 1.8, 1.8, 0.2}), uniform_density(2)};
  for (int t = 0; t < 4; ++t) cases.push_back(random_density(gen, 2));
  for (const Density& d : cases) {
    const std::size_t X = 4;
    const int R = 8;
    std::vector<int> h(X + 1);
    double best = -1.0;
    std::vector<int> best_heights;
    enumerate_chains(h, 0, R, [&] {
      const double v = chain_value(d, h, X, R);
      if (v > best * (1.0 + 1e-12)) {
        best = v;
        best_heights = h;
      }
    });
    const VariationalResult r = solve_jbar(d, {0.25, 0.125});
    CHECK(r.j_low == doctest::Approx(best).epsilon(1e-12));
    CHECK(r.best_curve.heights == best_heights);
  }
}

TEST_CASE("near-optimal curves") {
  const Density ridges = make_grid_density(2, {0.2, 1.8, 1.8, 0.2});
  const SolverConfig config{1.0 / 8.0, 1.0 / 64.0};
  const auto optima = near_optimal_curves(ridges, config, 0.0);
  const VariationalResult r = solve_jbar(ridges, config);
  REQUIRE(!optima.empty());
  CHECK(optima.front().heights == r.best_curve.heights);
  for (const auto& c : optima) {
    double v = 0.0;
    for (const double w : block_masses(ridges, c)) v += std::sqrt(w);
    CHECK(v == doctest::Approx(r.j_low).epsilon(1e-10));
  }
  const auto loose = near_optimal_curves(ridges, config, 0.05);
  CHECK(loose.size() >= 2);
  CHECK(loose.size() >= optima.size());
  for (std::size_t a = 0; a < loose.size(); ++a) {
    for (std::size_t b = a + 1; b < loose.size(); ++b) CHECK(loose[a].sup_distance(loose[b]) >= 2.0 / 64.0 - 1e-12);
  }
  CHECK(near_optimal_curves(ridges, config, 0.5, 3).size() <= 3);

  // The diagonal is optimal for the uniform density.
  const auto flat = near_optimal_curves(uniform_density(2), {0.25, 0.25}, 0.0);
  const bool has_diagonal = std::any_of(flat.begin(), flat.end(), [](const BlockCurve& c) {
    return c.heights == std::vector<int>{0, 1, 2, 3, 4};
  });
  CHECK(has_diagonal);
  CHECK_THROWS_AS(near_optimal_curves(ridges, config, -0.1), ValidationError);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(solve_jbar(uniform_density(8), {0.25, 1.0 / 64.0}), ValidationError);
  CHECK_THROWS_AS(solve_jbar(uniform_density(2), {0.25, 0.5}), ValidationError);
  CHECK_THROWS_AS(solve_jbar(uniform_density(2), {0.3, 0.1}), ValidationError);
  CHECK_THROWS_AS(solve_jbar(uniform_density(2), {1.0 / 16384.0, 1.0 / 16384.0}), ValidationError);
}

TEST_CASE("block curves") {
  const BlockCurve a{{0, 2, 4}, 0.5, 0.25};
  const BlockCurve b{{1, 2, 3}, 0.5, 0.25};
  CHECK(a(0.25) == doctest::Approx(0.25));
  CHECK(a(1.0) == doctest::Approx(1.0));
  CHECK(a.points()[1][0] == 0.5);
  CHECK(a.sup_distance(b) == 0.25);
  CHECK_THROWS_AS(a.sup_distance(BlockCurve{{0, 1}, 1.0, 0.25}), ValidationError);

  const auto corners = corner_block_masses(uniform_density(2), MonotoneCurve({0.0, 1.0}), 0.25);
  REQUIRE(corners.size() == 4);
  for (const double w : corners) CHECK(w == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("upper-rate fluctuation profiles") {
  const std::vector<double> rho{0.25, 0.25, 0.25, 0.25};
  const UpperRateResult r = discrete_upper_rate(rho, 1.0, 3);
  CHECK(r.value == doctest::Approx(2.0 * u0(0.5).value).epsilon(1e-12));
  CHECK(std::abs(r.numeric_value - r.value) <= 1e-6);
  for (const double t : r.profile.t) CHECK(t == doctest::Approx(0.5));

  const std::vector<double> uneven{0.1, 0.4, 0.3, 0.2};
  double s = 0.0;
  for (const double w : uneven) s += std::sqrt(w);
  const UpperRateResult u = discrete_upper_rate(uneven, 0.8, 5);
  CHECK(u.value == doctest::Approx(s * u0(0.8 / s).value).epsilon(1e-12));
  CHECK(u.numeric_value >= u.value - 1e-9);
  double slack = -2.0 * s - 0.8;
  for (std::size_t k = 0; k < uneven.size(); ++k) slack += (2.0 + u.numeric_profile[k]) * std::sqrt(uneven[k]);
  CHECK(slack >= -1e-9);

  const FluctuationProfile p = optimal_fluctuation_profile(1.0, 1.0);
  CHECK(p.t == std::vector<double>{1.0});
  CHECK(p.support == 1.0);
  CHECK(p.objective == doctest::Approx(1.302405945715662));
  CHECK(optimal_fluctuation_profile(0.5, 1.0).objective == doctest::Approx(1.803729972561512));
  CHECK_THROWS_AS(discrete_upper_rate(std::vector<double>{}, 1.0), ValidationError);
  CHECK_THROWS_AS(discrete_upper_rate(std::vector<double>{0.0, 1.0}, 1.0), ValidationError);
}
