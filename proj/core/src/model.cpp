#include "lisdev/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "lisdev/error.hpp"
#include "lisdev/parallel.hpp"
#include "lisdev/rng.hpp"

namespace lisdev {

double Density::cell_mass(std::size_t ix, std::size_t iy) const {
  const double area = 1.0 / static_cast<double>(m_ * m_);
  return value(ix, iy) * area;
}

double Density::at(double x, double y) const {
  const auto index = [this](double t) {
    const auto i = static_cast<std::size_t>(std::floor(t * static_cast<double>(m_)));
    return std::min(i, m_ - 1);
  };
  return value(index(std::clamp(x, 0.0, 1.0)), index(std::clamp(y, 0.0, 1.0)));
}

double rectangle_mass(const Density& density, double x0, double x1, double y0, double y1) {
  x0 = std::clamp(x0, 0.0, 1.0);
  x1 = std::clamp(x1, 0.0, 1.0);
  y0 = std::clamp(y0, 0.0, 1.0);
  y1 = std::clamp(y1, 0.0, 1.0);
  if (!(x1 > x0 && y1 > y0)) return 0.0;
  const std::size_t m = density.resolution();
  const double md = static_cast<double>(m);
  const auto first = [&](double t) { return std::min(static_cast<std::size_t>(std::floor(t * md)), m - 1); };
  const auto last = [&](double t) { return std::min(static_cast<std::size_t>(std::ceil(t * md)), m); };
  double mass = 0.0;
  for (std::size_t iy = first(y0); iy < last(y1); ++iy) {
    const double h = std::min(y1, (iy + 1) / md) - std::max(y0, iy / md);
    if (h <= 0.0) continue;
    for (std::size_t ix = first(x0); ix < last(x1); ++ix) {
      const double w = std::min(x1, (ix + 1) / md) - std::max(x0, ix / md);
      if (w > 0.0) mass += density.value(ix, iy) * w * h;
    }
  }
  return mass;
}

bool Density::is_constant() const {
  const auto [lo, hi] = std::minmax_element(cells_.begin(), cells_.end());
  return *hi - *lo <= 1e-12 * std::abs(*hi);
}

Density make_grid_density(std::size_t m, std::vector<double> cells) {
  if (m < 2) throw ValidationError("grid resolution must be at least 2");
  if (cells.size() != m * m) {
    throw ValidationError("grid has " + std::to_string(cells.size()) +
                          " cells; expected m*m = " + std::to_string(m * m));
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!(cells[k] > 0.0) || !std::isfinite(cells[k])) {
      std::ostringstream msg;
      msg << "non-positive cell (" << k / m << "," << k % m << ")";
      throw ValidationError(msg.str());
    }
  }
  const double mean = std::accumulate(cells.begin(), cells.end(), 0.0) / static_cast<double>(m * m);
  const double scale = 1.0 / mean;
  for (double& c : cells) c *= scale;
  return Density(m, std::move(cells), scale - 1.0, true);
}

Density make_grid_density(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  std::vector<double> cells;
  cells.reserve(m * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw ValidationError("density grid is not square");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return make_grid_density(m, std::move(cells));
}

Density uniform_density(std::size_t m) { return make_grid_density(m, std::vector<double>(m * m, 1.0)); }

Density product_density(std::span<const double> g, std::span<const double> h) {
  if (g.size() != h.size()) throw ValidationError("product marginals must share one grid");
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(g[i] > 0.0) || !(h[i] > 0.0)) throw ValidationError("product marginals must be positive");
  }
  std::vector<double> cells(m * m);
  for (std::size_t iy = 0; iy < m; ++iy) {
    for (std::size_t ix = 0; ix < m; ++ix) cells[iy * m + ix] = g[ix] * h[iy];
  }
  return make_grid_density(m, std::move(cells));
}

Density strip_depleted_density(std::size_t m, double delta, double depletion) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("strip width delta must lie in (0,1)");
  if (!(depletion >= 0.0 && depletion < 1.0)) throw ValidationError("depletion must lie in [0,1)");
  if (m < 2) throw ValidationError("grid resolution must be at least 2");

  // Cell centres differ by (ix - iy)/m; the band test is done in integers
  // scaled by 3m so that boundary cells resolve consistently.
  const double band_limit = delta * static_cast<double>(m) * (1.0 - 1e-12);
  std::vector<char> in_band(m * m);
  std::size_t band_cells = 0;
  for (std::size_t iy = 0; iy < m; ++iy) {
    for (std::size_t ix = 0; ix < m; ++ix) {
      const double gap = std::abs(static_cast<double>(ix) - static_cast<double>(iy));
      const bool inside = 3.0 * gap < band_limit;
      in_band[iy * m + ix] = inside;
      band_cells += inside;
    }
  }
  if (band_cells == m * m) throw ValidationError("strip covers the whole grid; nothing to restore mass");

  const double total = static_cast<double>(m * m);
  const double band_fraction = static_cast<double>(band_cells) / total;
  const double inner = 1.0 - depletion;
  const double outer = (1.0 - inner * band_fraction) / (1.0 - band_fraction);
  std::vector<double> cells(m * m);
  for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = in_band[k] ? inner : outer;
  return make_grid_density(m, std::move(cells));
}

Density builtin_density(std::string_view name, const DensityParams& params) {
  if (name == "uniform") return uniform_density(params.m);
  if (name == "product") {
    if (params.g.empty() || params.h.empty()) throw ValidationError("product density needs marginals g and h");
    return product_density(params.g, params.h);
  }
  if (name == "strip_depleted") return strip_depleted_density(params.m, params.delta, params.depletion);
  throw ValidationError("unknown density family '" + std::string(name) + "'");
}

DensitySampler::DensitySampler(const Density& density) : m_(density.resolution()) {
  const auto cells = density.cells();
  cumulative_.resize(cells.size());
  double running = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    running += cells[k];
    cumulative_[k] = running;
  }
  for (double& c : cumulative_) c /= running;
  cumulative_.back() = 1.0;
}

void DensitySampler::draw(std::size_t n, std::uint64_t seed, std::vector<Point>& out) const {
  out.resize(n);
  constexpr std::size_t kChunk = 1 << 14;
  if (n > 4 * kChunk) {
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
      draw_range(seed, c * kChunk, std::min(n, (c + 1) * kChunk), out);
    });
  } else {
    draw_range(seed, 0, n, out);
  }
}

void DensitySampler::draw_range(std::uint64_t seed, std::size_t begin, std::size_t end,
                                std::vector<Point>& out) const {
  const double cell = 1.0 / static_cast<double>(m_);
  for (std::size_t i = begin; i < end; ++i) {
    CounterRng rng(seed, i);
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                         cumulative_.size() - 1);
    const std::size_t ix = k % m_;
    const std::size_t iy = k / m_;
    out[i].x = (static_cast<double>(ix) + rng.uniform()) * cell;
    out[i].y = (static_cast<double>(iy) + rng.uniform()) * cell;
  }
}

PointSample sample_iid(const Density& density, std::size_t n, std::uint64_t seed) {
  PointSample sample;
  sample.seed = seed;
  sample.source = SampleSource::iid;
  DensitySampler(density).draw(n, seed, sample.points);
  return sample;
}

PointSample sample_poisson(const Density& density, double intensity, std::uint64_t seed) {
  if (!(intensity > 0.0)) throw ValidationError("Poisson intensity must be positive");
  CounterRng count_rng(seed, kCountStream);
  const std::uint64_t count = poisson_variate(count_rng, intensity);
  PointSample sample = sample_iid(density, static_cast<std::size_t>(count), seed);
  sample.source = SampleSource::poisson;
  return sample;
}

EntropyValue relative_entropy(const Density& nu, const Density& mu) {
  if (nu.resolution() != mu.resolution()) throw ValidationError("relative entropy needs densities on one grid");
  const auto q = nu.cells();
  const auto p = mu.cells();
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] == 0.0) continue;
    if (p[k] == 0.0) return {std::numeric_limits<double>::infinity(), true};
    sum += q[k] * std::log(q[k] / p[k]);
  }
  const double m = static_cast<double>(nu.resolution());
  double value = sum / (m * m);
  if (value < 0.0) {
    if (value < -1e-12) throw std::logic_error("relative entropy came out negative");
    value = 0.0;
  }
  return {value, false};
}

double bernoulli_kl(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    throw ValidationError("bernoulli_kl needs arguments strictly inside (0,1)");
  }
  return (1.0 - a) * std::log((1.0 - a) / (1.0 - b)) + a * std::log(a / b);
}

namespace {

double min_adjacent_gap(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < values.size(); ++i) best = std::min(best, values[i] - values[i - 1]);
  return best;
}

}  // namespace

double min_gap(const PointSample& sample) {
  if (sample.n() < 2) throw ValidationError("min_gap needs at least two points");
  std::vector<double> xs, ys;
  xs.reserve(sample.n());
  ys.reserve(sample.n());
  for (const auto& p : sample.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const double gap = std::min(min_adjacent_gap(std::move(xs)), min_adjacent_gap(std::move(ys)));
  if (!(gap > 0.0)) throw ValidationError("duplicate coordinate in sample");
  return 0.5 * gap;
}

std::size_t smoothing_resolution(double eps) {
  if (!(eps > 0.0)) throw ValidationError("smoothing width must be positive");
  const double target = 4.0 / eps;
  const double nearest = std::round(target);
  if (std::abs(target - nearest) <= 1e-9 * target) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(target));
}

namespace {

// Snaps t to the grid line k/m when within rounding distance.
double snap(double t, double m) {
  const double scaled = t * m;
  const double nearest = std::round(scaled);
  return std::abs(scaled - nearest) <= 1e-9 ? nearest / m : t;
}

void check_smoothing_width(const PointSample& sample, double eps) {
  if (!(eps > 0.0)) throw ValidationError("smoothing width must be positive");
  if (sample.n() == 0) throw ValidationError("cannot smooth an empty sample");
  if (sample.n() >= 2 && eps > min_gap(sample) * (1.0 + 1e-12)) {
    throw ValidationError("smoothing width exceeds min_gap; squares would overlap");
  }
}

}  // namespace

Density smoothed_empirical_density(const PointSample& sample, double eps) {
  check_smoothing_width(sample, eps);
  const std::size_t m = smoothing_resolution(eps);
  if (m > kMaxSmoothingResolution) {
    throw ValidationError("smoothing grid of " + std::to_string(m) +
                          " cells per side exceeds the limit; rank_normalize the sample first");
  }
  const double md = static_cast<double>(m);
  const double per_point = 1.0 / static_cast<double>(sample.n());
  std::vector<double> mass(m * m, 0.0);

  for (const auto& z : sample.points) {
    const double x0 = snap(std::max(0.0, z.x - 0.5 * eps), md);
    const double x1 = snap(std::min(1.0, z.x + 0.5 * eps), md);
    const double y0 = snap(std::max(0.0, z.y - 0.5 * eps), md);
    const double y1 = snap(std::min(1.0, z.y + 0.5 * eps), md);
    const double area = (x1 - x0) * (y1 - y0);
    const auto first = [md](double t) { return static_cast<std::size_t>(std::floor(t * md)); };
    const std::size_t ix_end = std::min(m, static_cast<std::size_t>(std::ceil(x1 * md)));
    const std::size_t iy_end = std::min(m, static_cast<std::size_t>(std::ceil(y1 * md)));
    for (std::size_t iy = first(y0); iy < iy_end; ++iy) {
      const double oy = std::min(y1, (iy + 1) / md) - std::max(y0, iy / md);
      if (oy <= 0.0) continue;
      for (std::size_t ix = first(x0); ix < ix_end; ++ix) {
        const double ox = std::min(x1, (ix + 1) / md) - std::max(x0, ix / md);
        if (ox <= 0.0) continue;
        mass[iy * m + ix] += per_point * ox * oy / area;
      }
    }
  }
  for (double& c : mass) c *= md * md;
  return Density(m, std::move(mass), 0.0, false);
}

double smoothing_resolution_slack(const PointSample& sample, double eps) {
  check_smoothing_width(sample, eps);
  const std::size_t m = smoothing_resolution(eps);
  const double md = static_cast<double>(m);
  const auto on_grid = [md](double t) {
    const double s = t * md;
    return std::abs(s - std::round(s)) <= 1e-9;
  };
  for (const auto& z : sample.points) {
    for (double t : {z.x - 0.5 * eps, z.x + 0.5 * eps, z.y - 0.5 * eps, z.y + 0.5 * eps}) {
      if (!on_grid(std::clamp(t, 0.0, 1.0))) return 2.0 / (eps * md);
    }
  }
  return 0.0;
}

PointSample rank_normalize(const PointSample& sample) {
  const std::size_t n = sample.n();
  PointSample out = sample;
  std::vector<std::size_t> order(n);
  const auto assign = [&](auto key, auto set) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return key(sample.points[a]) < key(sample.points[b]); });
    for (std::size_t r = 0; r < n; ++r) {
      if (r > 0 && key(sample.points[order[r]]) == key(sample.points[order[r - 1]])) {
        throw ValidationError("duplicate coordinate in sample");
      }
      set(out.points[order[r]], (static_cast<double>(r) + 0.5) / static_cast<double>(n));
    }
  };
  assign([](const Point& p) { return p.x; }, [](Point& p, double v) { p.x = v; });
  assign([](const Point& p) { return p.y; }, [](Point& p, double v) { p.y = v; });
  return out;
}

}  // namespace lisdev
