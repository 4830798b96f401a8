#pragma once

// Young shapes in column convention: columns are listed left to right with
// nonincreasing lengths, so the first column length is the LIS length of the
// permutations the shape labels under Schensted's correspondence.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lisdev {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class YoungShape {
 public:
  YoungShape() = default;
  /// Throws ValidationError unless lengths are positive and nonincreasing.
  explicit YoungShape(std::vector<int> columns);

  const std::vector<int>& columns() const { return columns_; }
  int size() const { return size_; }
  /// Length of the first column; 0 for the empty shape.
  int first_column() const { return columns_.empty() ? 0 : columns_.front(); }
  std::size_t column_count() const { return columns_.size(); }
  /// rows()[j] = number of columns longer than j (row j counted from the bottom).
  std::vector<int> rows() const;
  /// Shape with rows and columns exchanged (standard row convention).
  YoungShape conjugate() const;

  friend bool operator==(const YoungShape& a, const YoungShape& b) { return a.columns_ == b.columns_; }

 private:
  std::vector<int> columns_;
  int size_ = 0;
};

inline constexpr int kDefaultShapeCap = 70;
/// Exact rational pmfs are produced up to this n; log-domain floats above.
inline constexpr int kExactArithmeticLimit = 20;
inline constexpr int kExactHookRatioLimit = 60;

/// Number of partitions of n (coin-change recurrence).
std::uint64_t partition_count(int n);

using ShapeVisitor = std::function<void(std::span<const int> columns)>;

/// Visits every shape of size n once, in reverse lexicographic order of the
/// column sequence: (n) first, (1,1,...,1) last. Rejects n above cap.
void for_each_shape(int n, const ShapeVisitor& visit, int cap = kDefaultShapeCap);

/// The shapes of size n whose first column has the given length, in the same
/// order. Shapes split into these groups for parallel work.
void for_each_shape_with_first_column(int n, int first_column, const ShapeVisitor& visit);

std::vector<YoungShape> enumerate_shapes(int n, int cap = kDefaultShapeCap);

struct HookData {
  std::vector<int> hooks;  // ascending
  double log_hook_product = 0.0;
  BigInt hook_product;
  BigInt dimension;  // n! / hook_product, the number of standard tableaux
};

/// Hook of a cell = cells above it in its column + cells right of it in its
/// row + 1.
HookData hook_data(const YoungShape& shape);

enum class Arithmetic { exact_rational, log_domain };

/// Law of an LIS length: probability[k] = P(L = k) for k = 0..max.
struct Pmf {
  Arithmetic mode = Arithmetic::log_domain;
  std::vector<double> probability;
  std::vector<Rational> exact;  // filled in exact_rational mode
  double truncation_residual = 0.0;

  std::size_t max_k() const { return probability.empty() ? 0 : probability.size() - 1; }
  double total() const;
  double mean() const;
  /// P(L < t) and P(L >= t) for a real threshold t.
  double probability_below(double t) const;
  double probability_at_least(double t) const;
};

/// P(L_max(n) = k) = sum over shapes with first column k of n!/pi(shape)^2.
/// Exact rationals for n <= 20, compensated log-domain sums above.
Pmf exact_lmax_distribution(int n, int cap = kDefaultShapeCap);

/// Runs lmax_permutation over all n! permutations; n <= 8.
Pmf brute_force_lmax_distribution(int n);

/// Law of the LIS of a Poisson(intensity) uniform sample, mixing exact laws
/// until the Poisson tail drops below truncation_mass.
Pmf poissonized_lmax_distribution(double intensity, double truncation_mass, int cap = kDefaultShapeCap);

/// Piecewise-linear, nonnegative, nonincreasing f on [0, b] with unit
/// integral; f = 0 beyond the last knot.
class ShapeCurve {
 public:
  ShapeCurve(std::vector<double> x, std::vector<double> f);
  /// Samples g at `knots` equally spaced points of [0, support] and rescales
  /// to unit integral.
  static ShapeCurve from_function(const std::function<double(double)>& g, double support, std::size_t knots);

  double operator()(double x) const;
  /// sup{x : f(x) > y}; equals the support for 0 <= y < f(support).
  double inverse(double y) const;
  double support() const { return x_.back(); }
  double at_zero() const { return f_.front(); }
  double integral() const { return integral_; }
  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_f() const { return f_; }

 private:
  std::vector<double> x_;
  std::vector<double> f_;
  double integral_ = 0.0;
};

/// Column i (1-based) has length floor(f(i/sqrt n) sqrt n) for
/// i = 1..floor(b sqrt n); empty columns are dropped.
YoungShape shape_from_curve(const ShapeCurve& f, int n);

enum class QuadratureScheme {
  adaptive_tensor,  // adaptive Gauss-Kronrod outside, tanh-sinh inside
  boundary_layer,   // y = f(x)(1 - v^2) substitution, graded Gauss-Legendre
};

/// Raised when the hook integral misses its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

/// H(f) = int_0^b int_0^f(x) log(f(x) - y + f^{-1}(y) - x) dy dx.
double hook_integral(const ShapeCurve& f, QuadratureScheme scheme = QuadratureScheme::adaptive_tensor,
                     double tolerance = 1e-6);

/// Lengthens the first column by r >= 1.
YoungShape append_first_column(const YoungShape& shape, int r);

/// log(pi(shape') / pi(shape)) for shape' = append_first_column(shape, r),
/// from the product r! * prod_{j=1}^{tau(0)} (tau(0)+r-j+tau(j)) / (tau(0)-j+tau(j))
/// where tau(j) is the length of row j counted from the bottom starting at 1.
double hook_ratio_log(const YoungShape& shape, int r);

/// The same product in exact arithmetic; |shape| + r <= 60.
Rational hook_ratio_exact(const YoungShape& shape, int r);

}  // namespace lisdev
