#include "lisdev/lis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lisdev/error.hpp"

namespace lisdev {
namespace {

// Sort by x ascending, y descending on ties, so a strictly increasing run of
// y in this order is a strictly increasing chain in both coordinates.
std::vector<std::size_t> sweep_order(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    return points[a].y > points[b].y;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw ValidationError("sample contains the point (" + std::to_string(points[order[i]].x) + ", " +
                            std::to_string(points[order[i]].y) + ") twice");
    }
  }
  return order;
}

}  // namespace

LisResult lis_length(std::span<const Point> points) {
  const auto order = sweep_order(points);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<double> pile_top_y;          // smallest tail y of chains of each length
  std::vector<std::size_t> pile_top_index;  // input index of that tail
  std::vector<std::size_t> predecessor(points.size(), kNone);

  for (const std::size_t idx : order) {
    const double y = points[idx].y;
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pile_top_y.begin(), pile_top_y.end(), y) - pile_top_y.begin());
    predecessor[idx] = pos == 0 ? kNone : pile_top_index[pos - 1];
    if (pos == pile_top_y.size()) {
      pile_top_y.push_back(y);
      pile_top_index.push_back(idx);
    } else {
      pile_top_y[pos] = y;
      pile_top_index[pos] = idx;
    }
  }

  LisResult result;
  result.length = pile_top_y.size();
  if (result.length == 0) return result;
  result.witness.resize(result.length);
  std::size_t cursor = pile_top_index.back();
  for (std::size_t k = result.length; k-- > 0;) {
    result.witness[k] = cursor;
    cursor = predecessor[cursor];
  }
  return result;
}

std::size_t lis_size(std::span<const Point> points) {
  const auto order = sweep_order(points);
  std::vector<double> tails;
  for (const std::size_t idx : order) {
    const auto it = std::lower_bound(tails.begin(), tails.end(), points[idx].y);
    if (it == tails.end()) {
      tails.push_back(points[idx].y);
    } else {
      *it = points[idx].y;
    }
  }
  return tails.size();
}

LisResult lmax_permutation(std::span<const int> permutation) {
  const std::size_t n = permutation.size();
  std::vector<char> seen(n + 1, 0);
  std::vector<Point> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = permutation[i];
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("input is not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v)] = 1;
    points[i] = {static_cast<double>(i + 1), static_cast<double>(v)};
  }
  return lis_length(points);
}

}  // namespace lisdev
