#include "lisdev/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lisdev/error.hpp"

namespace lisdev {

MonotoneCurve::MonotoneCurve(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw ValidationError("a monotone curve needs at least two knots");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!(values_[k] >= 0.0 && values_[k] <= 1.0)) throw ValidationError("curve values must lie in [0,1]");
    if (k > 0 && values_[k] < values_[k - 1]) throw ValidationError("curve values must be nondecreasing");
  }
}

MonotoneCurve MonotoneCurve::from_function(const std::function<double(double)>& phi, std::size_t intervals) {
  if (intervals < 1) throw ValidationError("need at least one knot interval");
  std::vector<double> values(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    values[k] = std::clamp(phi(static_cast<double>(k) / static_cast<double>(intervals)), 0.0, 1.0);
  }
  return MonotoneCurve(std::move(values));
}

double MonotoneCurve::operator()(double x) const {
  const double scaled = std::clamp(x, 0.0, 1.0) * static_cast<double>(intervals());
  const auto k = std::min(static_cast<std::size_t>(scaled), intervals() - 1);
  const double t = scaled - static_cast<double>(k);
  return values_[k] + t * (values_[k + 1] - values_[k]);
}

std::vector<std::array<double, 2>> BlockCurve::points() const {
  std::vector<std::array<double, 2>> out;
  out.reserve(heights.size());
  for (std::size_t i = 0; i < heights.size(); ++i) {
    out.push_back({static_cast<double>(i) * delta, heights[i] * delta_y});
  }
  return out;
}

double BlockCurve::operator()(double x) const {
  if (heights.empty()) return 0.0;
  const double scaled = std::clamp(x, 0.0, 1.0) * static_cast<double>(columns());
  const auto i = std::min(static_cast<std::size_t>(scaled), columns() - 1);
  const double t = scaled - static_cast<double>(i);
  return ((1.0 - t) * heights[i] + t * heights[i + 1]) * delta_y;
}

double BlockCurve::sup_distance(const BlockCurve& other) const {
  if (heights.size() != other.heights.size()) throw ValidationError("block curves live on different lattices");
  int worst = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) worst = std::max(worst, std::abs(heights[i] - other.heights[i]));
  return worst * delta_y;
}

double jbar_functional(const Density& density, const MonotoneCurve& curve) {
  const auto& v = curve.values();
  const double md = static_cast<double>(density.resolution());
  const double h = 1.0 / static_cast<double>(curve.intervals());
  double total = 0.0;
  std::vector<double> cuts;
  for (std::size_t k = 0; k < curve.intervals(); ++k) {
    const double x0 = static_cast<double>(k) * h;
    const double x1 = static_cast<double>(k + 1) * h;
    const double slope = (v[k + 1] - v[k]) / h;
    if (slope <= 0.0) continue;
    cuts.assign({x0, x1});
    for (double g = std::ceil(x0 * md); g < x1 * md; g += 1.0) cuts.push_back(g / md);
    for (double g = std::ceil(v[k] * md); g < v[k + 1] * md; g += 1.0) cuts.push_back(x0 + (g / md - v[k]) / slope);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double a = std::max(cuts[p], x0);
      const double b = std::min(cuts[p + 1], x1);
      if (!(b > a)) continue;
      const double mid = 0.5 * (a + b);
      const double y = v[k] + slope * (mid - x0);
      total += (b - a) * std::sqrt(density.at(mid, y) * slope);
    }
  }
  return total;
}

namespace {

std::size_t lattice_count(double step, const char* name) {
  if (!(step > 0.0 && step <= 1.0)) throw ValidationError(std::string(name) + " must lie in (0, 1]");
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) > 1e-9 * rounded) {
    throw ValidationError(std::string(name) + " must be the reciprocal of an integer");
  }
  return static_cast<std::size_t>(rounded);
}

// Cumulative column masses W[i][r] = mu([i delta, (i+1) delta] x [0, r delta_y]).
class Lattice {
 public:
  Lattice(const Density& density, const SolverConfig& config) {
    columns = lattice_count(config.delta, "delta");
    rows = lattice_count(config.delta_y, "delta_y");
    delta = 1.0 / static_cast<double>(columns);
    delta_y = 1.0 / static_cast<double>(rows);
    const std::size_t m = density.resolution();
    if (rows < columns) throw ValidationError("delta_y must not exceed delta");
    if (columns % m != 0) {
      throw ValidationError("resolution coarser than the density grid: 1/delta = " + std::to_string(columns) +
                            " is not a multiple of m = " + std::to_string(m));
    }
    if (static_cast<double>(columns + 1) * static_cast<double>(rows + 1) > 1e8) {
      throw ValidationError("lattice too fine for the dynamic program");
    }
    cumulative.assign(columns * (rows + 1), 0.0);
    const double md = static_cast<double>(m);
    std::vector<double> prefix(m + 1);
    for (std::size_t i = 0; i < columns; ++i) {
      const std::size_t ix = i * m / columns;
      prefix[0] = 0.0;
      for (std::size_t iy = 0; iy < m; ++iy) prefix[iy + 1] = prefix[iy] + density.value(ix, iy) / md;
      for (std::size_t r = 0; r <= rows; ++r) {
        const std::size_t a = r * m / rows;
        double integral = prefix[a];
        if (a < m) {
          const double offset = static_cast<double>(r * m - a * rows) / (static_cast<double>(rows) * md);
          integral += density.value(ix, a) * offset;
        }
        cumulative[i * (rows + 1) + r] = delta * integral;
      }
    }
  }

  // Mass of column i (0-based) between lattice heights lo <= hi.
  double mass(std::size_t i, std::size_t lo, std::size_t hi) const {
    const double* w = &cumulative[i * (rows + 1)];
    return std::max(0.0, w[hi] - w[lo]);
  }

  std::size_t columns = 0;
  std::size_t rows = 0;
  double delta = 0.0;
  double delta_y = 0.0;
  std::vector<double> cumulative;
};

struct ChainTables {
  std::size_t stride = 0;
  std::vector<double> forward;   // best chain value ending at (i, r)
  std::vector<double> backward;  // best continuation from (i, r)
  std::vector<int> forward_arg;  // smallest predecessor height attaining forward
  std::vector<int> backward_arg; // smallest successor height attaining backward
  double best = 0.0;
};

constexpr double kTieTolerance = 1e-12;

// Both transitions have the form best over q of base[q] + sqrt(W(r) - W(q)).
// sqrt is concave, so the score matrix satisfies the inverse quadrangle
// inequality and the leftmost optimal q is nondecreasing in r. Divide and
// conquer over r then needs O(Y log Y) evaluations per column.
template <typename Score>
void monotone_argmax(std::size_t lo, std::size_t hi, std::size_t opt_lo, std::size_t opt_hi, const Score& score,
                     double* value, int* arg) {
  if (lo > hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  double best = -1.0;
  std::size_t best_q = opt_lo;
  for (std::size_t q = opt_lo; q <= opt_hi; ++q) {
    const double v = score(q, mid);
    if (v > best * (1.0 + kTieTolerance)) {
      best = v;
      best_q = q;
    }
  }
  value[mid] = best;
  if (arg) arg[mid] = static_cast<int>(best_q);
  if (mid > lo) monotone_argmax(lo, mid - 1, opt_lo, best_q, score, value, arg);
  if (mid < hi) monotone_argmax(mid + 1, hi, best_q, opt_hi, score, value, arg);
}

ChainTables disjoint_chains(const Lattice& lat) {
  const std::size_t X = lat.columns;
  const std::size_t S = lat.rows + 1;
  ChainTables t;
  t.stride = S;
  t.forward.assign((X + 1) * S, 0.0);
  t.backward.assign((X + 1) * S, 0.0);
  t.forward_arg.assign((X + 1) * S, 0);
  t.backward_arg.assign((X + 1) * S, 0);

  // forward[i][r] = max_{q <= r} forward[i-1][q] + sqrt(mass(i-1, q, r)); the
  // constraint q <= r is enforced by scoring q > r as -infinity.
  for (std::size_t i = 1; i <= X; ++i) {
    const double* prev = &t.forward[(i - 1) * S];
    const auto score = [&](std::size_t q, std::size_t r) {
      return q > r ? -std::numeric_limits<double>::infinity() : prev[q] + std::sqrt(lat.mass(i - 1, q, r));
    };
    monotone_argmax(0, S - 1, 0, S - 1, score, &t.forward[i * S], &t.forward_arg[i * S]);
  }
  // backward[i][q] = max_{r >= q} sqrt(mass(i, q, r)) + backward[i+1][r].
  for (std::size_t i = X; i-- > 0;) {
    const double* next = &t.backward[(i + 1) * S];
    const auto score = [&](std::size_t r, std::size_t q) {
      return r < q ? -std::numeric_limits<double>::infinity() : std::sqrt(lat.mass(i, q, r)) + next[r];
    };
    monotone_argmax(0, S - 1, 0, S - 1, score, &t.backward[i * S], &t.backward_arg[i * S]);
  }
  t.best = *std::max_element(t.backward.begin(), t.backward.begin() + static_cast<std::ptrdiff_t>(S));
  return t;
}

double overlapping_chains(const Lattice& lat) {
  const std::size_t X = lat.columns;
  const std::size_t R = lat.rows;
  std::vector<double> prev(R, 0.0);
  std::vector<double> cur(R, 0.0);
  for (std::size_t i = 0; i < X; ++i) {
    const auto score = [&](std::size_t q, std::size_t j) {
      return q > j ? -std::numeric_limits<double>::infinity() : prev[q] + std::sqrt(lat.mass(i, q, j + 1));
    };
    monotone_argmax(0, R - 1, 0, R - 1, score, cur.data(), static_cast<int*>(nullptr));
    std::swap(prev, cur);
  }
  return *std::max_element(prev.begin(), prev.end());
}

BlockCurve make_curve(const Lattice& lat, std::vector<int> heights) {
  return BlockCurve{std::move(heights), lat.delta, lat.delta_y};
}

// Best chain through node (i, r): predecessors by forward_arg, successors by
// backward_arg.
std::vector<int> chain_through(const ChainTables& t, std::size_t columns, std::size_t i, std::size_t r) {
  std::vector<int> heights(columns + 1);
  heights[i] = static_cast<int>(r);
  for (std::size_t k = i; k > 0; --k) {
    heights[k - 1] = t.forward_arg[k * t.stride + static_cast<std::size_t>(heights[k])];
  }
  for (std::size_t k = i; k < columns; ++k) {
    heights[k + 1] = t.backward_arg[k * t.stride + static_cast<std::size_t>(heights[k])];
  }
  return heights;
}

// Lexicographically smallest optimal chain.
std::vector<int> smallest_optimal_chain(const Lattice& lat, const ChainTables& t) {
  const std::size_t S = t.stride;
  const double slack = kTieTolerance * std::max(1.0, t.best);
  std::vector<int> heights(lat.columns + 1);
  std::size_t r = 0;
  while (t.backward[r] < t.best - slack) ++r;
  heights[0] = static_cast<int>(r);
  for (std::size_t i = 1; i <= lat.columns; ++i) {
    const double target = t.backward[(i - 1) * S + r] - slack;
    std::size_t next = r;
    while (next + 1 < S && std::sqrt(lat.mass(i - 1, r, next)) + t.backward[i * S + next] < target) ++next;
    r = next;
    heights[i] = static_cast<int>(r);
  }
  return heights;
}

std::vector<BlockCurve> collect_near_optimal(const Lattice& lat, const ChainTables& t, double tol,
                                             std::size_t max_curves) {
  const std::size_t S = t.stride;
  const double floor_value = t.best * (1.0 - tol) - kTieTolerance * std::max(1.0, t.best);
  struct Candidate {
    double value;
    std::vector<int> heights;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({t.best, smallest_optimal_chain(lat, t)});
  for (std::size_t i = 0; i <= lat.columns; ++i) {
    for (std::size_t r = 0; r < S; ++r) {
      const double through = t.forward[i * S + r] + t.backward[i * S + r];
      if (through >= floor_value) candidates.push_back({through, chain_through(t, lat.columns, i, r)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    const double gap = kTieTolerance * std::max(1.0, t.best);
    if (std::abs(a.value - b.value) > gap) return a.value > b.value;
    return a.heights < b.heights;
  });
  std::vector<BlockCurve> kept;
  for (auto& candidate : candidates) {
    BlockCurve curve = make_curve(lat, std::move(candidate.heights));
    const bool distinct = std::all_of(kept.begin(), kept.end(), [&](const BlockCurve& other) {
      return curve.sup_distance(other) >= 2.0 * lat.delta_y * (1.0 - 1e-12);
    });
    if (distinct) kept.push_back(std::move(curve));
    if (kept.size() >= max_curves) break;
  }
  return kept;
}

}  // namespace

VariationalResult solve_jbar(const Density& density, const SolverConfig& config) {
  const Lattice lat(density, config);
  const ChainTables tables = disjoint_chains(lat);
  VariationalResult out;
  out.delta = lat.delta;
  out.delta_y = lat.delta_y;
  out.j_low = tables.best;
  out.j_high = std::max(overlapping_chains(lat), tables.best);
  out.best_curve = make_curve(lat, smallest_optimal_chain(lat, tables));
  out.near_optimal = collect_near_optimal(lat, tables, 0.0, 64);
  return out;
}

std::vector<BlockCurve> near_optimal_curves(const Density& density, const SolverConfig& config, double tol,
                                            std::size_t max_curves) {
  if (!(tol >= 0.0)) throw ValidationError("tolerance must be nonnegative");
  const Lattice lat(density, config);
  return collect_near_optimal(lat, disjoint_chains(lat), tol, max_curves);
}

std::vector<double> block_masses(const Density& density, const BlockCurve& curve) {
  std::vector<double> out;
  for (std::size_t i = 1; i <= curve.columns(); ++i) {
    out.push_back(rectangle_mass(density, (i - 1) * curve.delta, i * curve.delta,
                                 curve.heights[i - 1] * curve.delta_y, curve.heights[i] * curve.delta_y));
  }
  return out;
}

std::vector<double> corner_block_masses(const Density& density, const MonotoneCurve& curve, double delta) {
  const std::size_t X = lattice_count(delta, "delta");
  const double step = 1.0 / static_cast<double>(X);
  std::vector<double> out;
  for (std::size_t i = 1; i <= X; ++i) {
    const double x = static_cast<double>(i) * step;
    const double rise = curve(x) - curve(x - step);
    out.push_back(step * rise * density.at(x, curve(x)));
  }
  return out;
}

}  // namespace lisdev
