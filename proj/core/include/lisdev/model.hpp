#pragma once

// Probability model on the unit square: piecewise-constant grid densities,
// i.i.d. and Poissonized sampling, relative entropy, and the smoothed
// empirical measure built from a point sample.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lisdev {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class SampleSource { iid, poisson };

struct PointSample {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  SampleSource source = SampleSource::iid;

  std::size_t n() const { return points.size(); }
};

/// Density with respect to Lebesgue measure on [0,1]^2, constant on the
/// cells of an m-by-m grid. Cell (ix, iy) covers [ix/m,(ix+1)/m) x
/// [iy/m,(iy+1)/m) and is stored at cells()[iy * m + ix] (row-major, rows
/// indexed by y). Values average to 1.
class Density {
 public:
  std::size_t resolution() const { return m_; }
  double value(std::size_t ix, std::size_t iy) const { return cells_[iy * m_ + ix]; }
  /// Probability mass of one cell.
  double cell_mass(std::size_t ix, std::size_t iy) const;
  /// Density at a point; points on the upper boundary belong to the last cell.
  double at(double x, double y) const;
  std::span<const double> cells() const { return cells_; }
  /// Rescale factor applied at construction, minus one.
  double normalization_residual() const { return residual_; }
  /// False only for smoothed empirical densities, which carry exact zeros.
  bool strictly_positive() const { return strictly_positive_; }
  bool is_constant() const;

  friend Density make_grid_density(std::size_t m, std::vector<double> cells);
  friend Density smoothed_empirical_density(const PointSample& sample, double eps);

 private:
  Density(std::size_t m, std::vector<double> cells, double residual, bool positive)
      : m_(m), cells_(std::move(cells)), residual_(residual), strictly_positive_(positive) {}

  std::size_t m_;
  std::vector<double> cells_;
  double residual_;
  bool strictly_positive_;
};

/// Normalizes strictly positive cell values (row-major, m*m entries) to unit
/// mass. Throws ValidationError naming the first non-positive cell.
Density make_grid_density(std::size_t m, std::vector<double> cells);

/// Same, from nested rows (rows[iy][ix]); rejects ragged or non-square input.
Density make_grid_density(const std::vector<std::vector<double>>& rows);

Density uniform_density(std::size_t m);

/// p(x,y) proportional to g(x) h(y); both marginals on the same m-cell grid.
Density product_density(std::span<const double> g, std::span<const double> h);

/// Value (1 - depletion) on the cells whose centres satisfy |x - y| < delta/3,
/// a constant elevated value elsewhere restoring unit mass.
Density strip_depleted_density(std::size_t m, double delta, double depletion);

/// Parameters for builtin_density; fields unused by a family are ignored.
struct DensityParams {
  std::size_t m = 64;
  std::vector<double> g;
  std::vector<double> h;
  double delta = 0.3;
  double depletion = 0.2;
};

/// name in {"uniform", "product", "strip_depleted"}.
Density builtin_density(std::string_view name, const DensityParams& params);

/// Exact mass of [x0,x1] x [y0,y1] (clipped to the unit square).
double rectangle_mass(const Density& density, double x0, double x1, double y0, double y1);

/// n i.i.d. points: cell chosen by mass, position uniform inside the cell.
/// Point i draws from CounterRng(seed, i).
PointSample sample_iid(const Density& density, std::size_t n, std::uint64_t seed);

/// Poisson(intensity) many points, then positions as in sample_iid.
PointSample sample_poisson(const Density& density, double intensity, std::uint64_t seed);

/// Reusable sampler; precomputes the cumulative cell masses once.
class DensitySampler {
 public:
  explicit DensitySampler(const Density& density);
  void draw(std::size_t n, std::uint64_t seed, std::vector<Point>& out) const;

 private:
  void draw_range(std::uint64_t seed, std::size_t begin, std::size_t end, std::vector<Point>& out) const;

  std::size_t m_;
  std::vector<double> cumulative_;
};

struct EntropyValue {
  double value = 0.0;
  bool infinite = false;
};

/// H(nu | mu) = (1/m^2) sum q log(q/p); infinite when nu charges a cell
/// where mu vanishes.
EntropyValue relative_entropy(const Density& nu, const Density& mu);

/// (1-a) log((1-a)/(1-b)) + a log(a/b) for a, b in (0,1).
double bernoulli_kl(double a, double b);

/// Half the smallest coordinate gap min(|X_i - X_j|, |Y_i - Y_j|) over pairs.
double min_gap(const PointSample& sample);

/// Smallest grid resolution m with 1/m <= eps/4.
std::size_t smoothing_resolution(double eps);

/// Largest grid resolution smoothed_empirical_density will allocate.
inline constexpr std::size_t kMaxSmoothingResolution = 4096;

/// Density (1/n) sum_i eps^-2 1{Q_eps(Z_i)} rasterized on the grid of
/// smoothing_resolution(eps) with exact area weights. Squares clipped by the
/// boundary of the unit square are reweighted to keep mass 1/n each. Cells
/// outside every square are exactly zero.
Density smoothed_empirical_density(const PointSample& sample, double eps);

/// Relative distortion of the J-bar functional caused by rasterizing the
/// squares: 0 when every square edge falls on a grid line, 2/(eps m)
/// otherwise.
double smoothing_resolution_slack(const PointSample& sample, double eps);

/// Replaces coordinates by (rank - 1/2)/n along each axis. The map is strictly
/// increasing per axis, so increasing chains are preserved.
PointSample rank_normalize(const PointSample& sample);

}  // namespace lisdev
