#pragma once

// The J-bar variational problem
//
//   J(mu) = sup over nondecreasing phi of int_0^1 sqrt(p(x, phi(x)) phi'(x)) dx
//
// bracketed by two dynamic programs over block curves, and the discrete
// fluctuation-profile problem behind the upper-tail rate.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lisdev/model.hpp"

namespace lisdev {

/// Piecewise-linear nondecreasing phi on the knots k/K, k = 0..K.
class MonotoneCurve {
 public:
  explicit MonotoneCurve(std::vector<double> values);
  static MonotoneCurve from_function(const std::function<double(double)>& phi, std::size_t intervals);

  double operator()(double x) const;
  std::size_t intervals() const { return values_.size() - 1; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Column width delta, row height delta_y. heights[i] is the lattice height
/// (in units of delta_y) of the curve at x = i * delta, i = 0..1/delta.
/// Column i (1-based) holds the block between heights[i-1] and heights[i].
struct BlockCurve {
  std::vector<int> heights;
  double delta = 0.0;
  double delta_y = 0.0;

  std::size_t columns() const { return heights.empty() ? 0 : heights.size() - 1; }
  /// Polyline vertices (i delta, heights[i] delta_y).
  std::vector<std::array<double, 2>> points() const;
  /// Linear interpolation of the polyline.
  double operator()(double x) const;
  /// max_i |heights differ| * delta_y; curves must share the lattice.
  double sup_distance(const BlockCurve& other) const;
};

struct SolverConfig {
  double delta = 1.0 / 64.0;
  double delta_y = 1.0 / 8192.0;
};

struct VariationalResult {
  double j_low = 0.0;
  double j_high = 0.0;
  BlockCurve best_curve;  // a disjoint block chain attaining j_low
  double delta = 0.0;
  double delta_y = 0.0;
  std::vector<BlockCurve> near_optimal;
};

/// Exact value of the functional for piecewise-constant p and piecewise-linear
/// phi: each knot interval is split where phi crosses a grid line or x
/// crosses a grid column, and the integrand is constant on every piece.
double jbar_functional(const Density& density, const MonotoneCurve& curve);

/// j_low: best chain of disjoint blocks (column i, heights between lattice
/// levels r_{i-1} <= r_i) scored by sum sqrt(mu-mass). Every chain is realized
/// by a monotone curve with that value, so j_low <= J.
/// j_high: best overlapping block curve, column i covering rows j(i-1)..j(i)
/// with j nondecreasing, scored the same way. Cauchy-Schwarz per column bounds
/// every curve by such a sum, so J <= j_high.
/// Requires 1/delta and 1/delta_y integers, delta_y <= delta, and 1/delta a
/// multiple of the density resolution (so p is constant in x on a column).
/// Ties among optimal chains go to the lexicographically smallest heights.
VariationalResult solve_jbar(const Density& density, const SolverConfig& config = {});

/// DP-optimal disjoint chains plus chains within relative tolerance tol of
/// j_low, best first, keeping a curve only if its sup-distance to every
/// kept curve is at least 2 delta_y. tol = 0 keeps exact optima only (up to
/// 1e-12 rounding). At most max_curves are returned.
std::vector<BlockCurve> near_optimal_curves(const Density& density, const SolverConfig& config, double tol,
                                            std::size_t max_curves = 64);

/// Exact mu-masses of the disjoint blocks of a curve.
std::vector<double> block_masses(const Density& density, const BlockCurve& curve);

/// First-order masses delta (phi(i delta) - phi((i-1) delta)) p(i delta, phi(i delta)).
std::vector<double> corner_block_masses(const Density& density, const MonotoneCurve& curve, double delta);

struct FluctuationProfile {
  std::vector<double> t;   // per block, or a single constant for the continuum form
  double support = 0.0;    // length of [0, jbar] for the continuum form, 0 otherwise
  double objective = 0.0;  // sum sqrt(rho_i) U0(t_i), or jbar U0(c / jbar)
};

struct UpperRateResult {
  double value = 0.0;  // closed form (sum sqrt rho) U0(c / sum sqrt rho)
  FluctuationProfile profile;
  double numeric_value = 0.0;  // best of the coordinate-descent runs
  std::vector<double> numeric_profile;
};

/// Raised when the numeric minimizer and the closed form disagree.
class CrossCheckError : public std::runtime_error {
 public:
  CrossCheckError(double closed_form, double numeric);
  double closed_form;
  double numeric;
};

/// min sum sqrt(rho_i) U0(t_i) subject to sum (2 + t_i) sqrt(rho_i) >= 2 sum sqrt(rho_i) + c,
/// t_i >= 0. Jensen gives the constant profile; a pairwise coordinate descent
/// from 10 random feasible starts checks it to 1e-6.
UpperRateResult discrete_upper_rate(std::span<const double> rho, double c, std::uint64_t seed = 0);

/// Constant profile c / jbar on [0, jbar] with objective jbar U0(c / jbar).
FluctuationProfile optimal_fluctuation_profile(double jbar, double c);

}  // namespace lisdev
