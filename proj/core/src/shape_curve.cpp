#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lisdev/error.hpp"
#include "lisdev/tableaux.hpp"

namespace lisdev {

namespace {

double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) sum += 0.5 * (f[k] + f[k + 1]) * (x[k + 1] - x[k]);
  return sum;
}

}  // namespace

ShapeCurve::ShapeCurve(std::vector<double> x, std::vector<double> f) : x_(std::move(x)), f_(std::move(f)) {
  if (x_.size() != f_.size() || x_.size() < 2) throw ValidationError("curve needs at least two knots with values");
  if (x_.front() != 0.0) throw ValidationError("curve knots must start at x = 0");
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (!std::isfinite(x_[k]) || !std::isfinite(f_[k])) throw ValidationError("curve knots must be finite");
    if (f_[k] < 0.0) throw ValidationError("curve values must be nonnegative");
    if (k > 0 && !(x_[k] > x_[k - 1])) throw ValidationError("curve knots must be strictly increasing");
    if (k > 0 && f_[k] > f_[k - 1]) throw ValidationError("curve values must be nonincreasing");
  }
  if (!(f_.front() > 0.0)) throw ValidationError("degenerate curve: f(0) must be positive");
  integral_ = trapezoid_integral(x_, f_);
  if (std::abs(integral_ - 1.0) > 1e-9) {
    throw ValidationError("curve integral is " + std::to_string(integral_) + ", expected 1");
  }
}

ShapeCurve ShapeCurve::from_function(const std::function<double(double)>& g, double support, std::size_t knots) {
  if (!(support > 0.0) || knots < 2) throw ValidationError("from_function needs positive support and two knots");
  std::vector<double> x(knots);
  std::vector<double> f(knots);
  for (std::size_t k = 0; k < knots; ++k) {
    x[k] = support * static_cast<double>(k) / static_cast<double>(knots - 1);
    f[k] = std::max(0.0, g(x[k]));
  }
  x.back() = support;
  const double area = trapezoid_integral(x, f);
  if (!(area > 0.0)) throw ValidationError("degenerate curve: zero integral");
  for (double& v : f) v /= area;
  return ShapeCurve(std::move(x), std::move(f));
}

double ShapeCurve::operator()(double x) const {
  if (x <= 0.0) return f_.front();
  if (x > x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return f_.back();
  const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = (x - x_[k]) / (x_[k + 1] - x_[k]);
  return f_[k] + t * (f_[k + 1] - f_[k]);
}

double ShapeCurve::inverse(double y) const {
  // Knots with f > y form a prefix because f is nonincreasing.
  const auto it = std::partition_point(f_.begin(), f_.end(), [y](double v) { return v > y; });
  const auto count = static_cast<std::size_t>(it - f_.begin());
  if (count == 0) return 0.0;
  if (count == f_.size()) return x_.back();
  const std::size_t k = count - 1;
  const double t = (f_[k] - y) / (f_[k] - f_[k + 1]);
  return x_[k] + t * (x_[k + 1] - x_[k]);
}

YoungShape shape_from_curve(const ShapeCurve& f, int n) {
  if (n < 1) throw ValidationError("n must be positive");
  const double root = std::sqrt(static_cast<double>(n));
  const auto count = static_cast<int>(std::floor(f.support() * root + 1e-9));
  std::vector<int> columns;
  for (int i = 1; i <= count; ++i) {
    const auto length = static_cast<int>(std::floor(f(i / root) * root + 1e-9));
    if (length <= 0) break;
    columns.push_back(length);
  }
  return YoungShape(std::move(columns));
}

namespace {

// Hook length at (x, y) below the curve; clamped away from log(0).
double log_hook(const ShapeCurve& f, double fx, double x, double y) {
  const double hook = (fx - y) + (f.inverse(y) - x);
  return std::log(std::max(hook, std::numeric_limits<double>::min()));
}

// Knot levels strictly inside (0, top), ascending, with 0 and top added.
std::vector<double> level_breaks(const ShapeCurve& f, double top) {
  std::vector<double> breaks{0.0};
  for (auto it = f.knots_f().rbegin(); it != f.knots_f().rend(); ++it) {
    if (*it > breaks.back() && *it < top) breaks.push_back(*it);
  }
  breaks.push_back(top);
  return breaks;
}

double integrate_adaptive_tensor(const ShapeCurve& f, double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  boost::math::quadrature::tanh_sinh<double> inner_rule;
  double inner_error = 0.0;

  auto column = [&](double x) {
    const double fx = f(x);
    if (!(fx > 0.0)) return 0.0;
    const std::vector<double> breaks = level_breaks(f, fx);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      double err = 0.0;
      sum += inner_rule.integrate([&](double y) { return log_hook(f, fx, x, y); }, breaks[k], breaks[k + 1], 1e-10,
                                  &err);
      inner_error = std::max(inner_error, err * (breaks[k + 1] - breaks[k]));
    }
    return sum;
  };

  const auto& knots = f.knots_x();
  double total = 0.0;
  double outer_error = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    double err = 0.0;
    total += gauss_kronrod<double, 31>::integrate(column, knots[k], knots[k + 1], 15, 1e-10, &err);
    outer_error += err;
  }
  const double achieved = outer_error + inner_error * f.support();
  if (!(achieved <= tolerance) || !std::isfinite(total)) {
    throw QuadratureError("hook integral missed tolerance (adaptive_tensor)", achieved);
  }
  return total;
}

// Breakpoints in [a, b] refined geometrically toward both ends.
std::vector<double> graded_panels(double a, double b, int levels, bool left, bool right) {
  std::vector<double> t{0.0, 1.0};
  if (left || right) {
    t = {0.0};
    const double mid = (left && right) ? 0.5 : 1.0;
    std::vector<double> lower;
    if (left) {
      for (int l = levels; l >= 1; --l) lower.push_back(mid * std::ldexp(1.0, -l));
    }
    t.insert(t.end(), lower.begin(), lower.end());
    if (left && right) t.push_back(0.5);
    if (right) {
      const double span = left ? 0.5 : 1.0;
      for (int l = 1; l <= levels; ++l) t.push_back(1.0 - span * std::ldexp(1.0, -l));
    }
    t.push_back(1.0);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = a + (b - a) * t[i];
  out.back() = b;
  return out;
}

double boundary_layer_sum(const ShapeCurve& f, int levels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  // y = f(x) (1 - v^2), dy = 2 f(x) v dv; the log singularity at y = f(x)
  // becomes v log v at v = 0.
  auto column = [&](double x) {
    const double fx = f(x);
    if (!(fx > 0.0)) return 0.0;
    std::vector<double> vbreaks{0.0, 1.0};
    for (const double level : f.knots_f()) {
      if (level > 0.0 && level < fx) vbreaks.push_back(std::sqrt(1.0 - level / fx));
    }
    std::sort(vbreaks.begin(), vbreaks.end());
    vbreaks.erase(std::unique(vbreaks.begin(), vbreaks.end()), vbreaks.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < vbreaks.size(); ++k) {
      const auto panels = graded_panels(vbreaks[k], vbreaks[k + 1], levels, true, true);
      for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
        sum += Rule::integrate(
            [&](double v) { return 2.0 * fx * v * log_hook(f, fx, x, fx * (1.0 - v * v)); }, panels[p],
            panels[p + 1]);
      }
    }
    return sum;
  };
  const auto& knots = f.knots_x();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const auto panels = graded_panels(knots[k], knots[k + 1], levels, true, true);
    for (std::size_t p = 0; p + 1 < panels.size(); ++p) total += Rule::integrate(column, panels[p], panels[p + 1]);
  }
  return total;
}

double integrate_boundary_layer(const ShapeCurve& f, double tolerance) {
  double previous = boundary_layer_sum(f, 4);
  double achieved = std::numeric_limits<double>::infinity();
  for (int levels = 8; levels <= 32; levels += 4) {
    const double current = boundary_layer_sum(f, levels);
    achieved = std::abs(current - previous);
    if (achieved <= tolerance * 0.1 && std::isfinite(current)) return current;
    previous = current;
  }
  throw QuadratureError("hook integral missed tolerance (boundary_layer)", achieved);
}

}  // namespace

double hook_integral(const ShapeCurve& f, QuadratureScheme scheme, double tolerance) {
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  return scheme == QuadratureScheme::adaptive_tensor ? integrate_adaptive_tensor(f, tolerance)
                                                     : integrate_boundary_layer(f, tolerance);
}

}  // namespace lisdev
