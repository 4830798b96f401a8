#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lisdev/model.hpp"

namespace lisdev {

struct LisResult {
  std::size_t length = 0;
  /// Indices into the input, ordered along the chain (both coordinates
  /// strictly increasing).
  std::vector<std::size_t> witness;
};

/// Longest chain strictly increasing in both coordinates, in O(n log n).
/// Input order is irrelevant. Equal x values never chain; a point repeated
/// exactly is rejected. Among several longest chains the returned witness is
/// deterministic but not canonical.
LisResult lis_length(std::span<const Point> points);
inline LisResult lis_length(const PointSample& sample) { return lis_length(sample.points); }

/// L_max of a permutation of 1..n given in one-line notation.
LisResult lmax_permutation(std::span<const int> permutation);

/// Length only; avoids building the witness. Same tie rules as lis_length.
std::size_t lis_size(std::span<const Point> points);

}  // namespace lisdev
