#include <algorithm>
#include <cmath>
#include <string>

#include "lisdev/error.hpp"
#include "lisdev/tableaux.hpp"

namespace lisdev {

YoungShape::YoungShape(std::vector<int> columns) : columns_(std::move(columns)) {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] <= 0) throw ValidationError("column lengths must be positive");
    if (i > 0 && columns_[i] > columns_[i - 1]) throw ValidationError("column lengths must be nonincreasing");
    size_ += columns_[i];
  }
}

std::vector<int> YoungShape::rows() const {
  std::vector<int> rows(static_cast<std::size_t>(first_column()), 0);
  for (const int c : columns_) {
    for (int j = 0; j < c; ++j) ++rows[static_cast<std::size_t>(j)];
  }
  return rows;
}

YoungShape YoungShape::conjugate() const { return YoungShape(rows()); }

std::uint64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int total = part; total <= n; ++total) ways[total] += ways[total - part];
  }
  return ways[static_cast<std::size_t>(n)];
}

namespace {

void fill_columns(std::vector<int>& columns, int remaining, int max_part, const ShapeVisitor& visit) {
  if (remaining == 0) {
    visit(columns);
    return;
  }
  for (int part = std::min(max_part, remaining); part >= 1; --part) {
    columns.push_back(part);
    fill_columns(columns, remaining - part, part, visit);
    columns.pop_back();
  }
}

void check_cap(int n, int cap) {
  if (n < 0) throw ValidationError("shape size must be nonnegative");
  if (n > cap) {
    throw ValidationError("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap) +
                          " (" + std::to_string(partition_count(n)) + " shapes)");
  }
}

}  // namespace

void for_each_shape_with_first_column(int n, int first_column, const ShapeVisitor& visit) {
  if (first_column < 1 || first_column > n) return;
  std::vector<int> columns;
  columns.reserve(static_cast<std::size_t>(n));
  columns.push_back(first_column);
  fill_columns(columns, n - first_column, first_column, visit);
}

void for_each_shape(int n, const ShapeVisitor& visit, int cap) {
  check_cap(n, cap);
  if (n == 0) {
    visit({});
    return;
  }
  for (int k = n; k >= 1; --k) for_each_shape_with_first_column(n, k, visit);
}

std::vector<YoungShape> enumerate_shapes(int n, int cap) {
  check_cap(n, cap);
  std::vector<YoungShape> shapes;
  shapes.reserve(static_cast<std::size_t>(partition_count(n)));
  for_each_shape(n, [&](std::span<const int> c) { shapes.emplace_back(std::vector<int>(c.begin(), c.end())); }, cap);
  return shapes;
}

HookData hook_data(const YoungShape& shape) {
  HookData data;
  const auto& cols = shape.columns();
  const auto rows = shape.rows();
  data.hooks.reserve(static_cast<std::size_t>(shape.size()));
  data.hook_product = 1;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (int j = 0; j < cols[i]; ++j) {
      const int above = cols[i] - j - 1;
      const int right = rows[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
      const int hook = above + right + 1;
      data.hooks.push_back(hook);
      data.log_hook_product += std::log(static_cast<double>(hook));
      data.hook_product *= hook;
    }
  }
  std::sort(data.hooks.begin(), data.hooks.end());
  BigInt factorial = 1;
  for (int k = 2; k <= shape.size(); ++k) factorial *= k;
  if (factorial % data.hook_product != 0) throw std::logic_error("hook product does not divide n!");
  data.dimension = factorial / data.hook_product;
  return data;
}

YoungShape append_first_column(const YoungShape& shape, int r) {
  if (r < 1) throw ValidationError("append_first_column needs r >= 1");
  std::vector<int> columns = shape.columns();
  if (columns.empty()) {
    columns.push_back(r);
  } else {
    columns.front() += r;
  }
  return YoungShape(std::move(columns));
}

double hook_ratio_log(const YoungShape& shape, int r) {
  if (r < 1) throw ValidationError("hook ratio needs r >= 1");
  const int height = shape.first_column();
  const auto rows = shape.rows();
  double log_ratio = std::lgamma(static_cast<double>(r) + 1.0);
  for (int j = 1; j <= height; ++j) {
    const int row = rows[static_cast<std::size_t>(j - 1)];
    log_ratio += std::log(static_cast<double>(height + r - j + row)) - std::log(static_cast<double>(height - j + row));
  }
  return log_ratio;
}

Rational hook_ratio_exact(const YoungShape& shape, int r) {
  if (r < 1) throw ValidationError("hook ratio needs r >= 1");
  if (shape.size() + r > kExactHookRatioLimit) {
    throw ValidationError("exact hook ratio is limited to |shape| + r <= " + std::to_string(kExactHookRatioLimit));
  }
  const int height = shape.first_column();
  const auto rows = shape.rows();
  BigInt numerator = 1;
  BigInt denominator = 1;
  for (int i = 2; i <= r; ++i) numerator *= i;
  for (int j = 1; j <= height; ++j) {
    const int row = rows[static_cast<std::size_t>(j - 1)];
    numerator *= height + r - j + row;
    denominator *= height - j + row;
  }
  return Rational(numerator, denominator);
}

}  // namespace lisdev
