#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lrt/point.hpp"

namespace lrt {

// Stable merge of two lists already in composite order on `dim`. Writes
// left.size() + right.size() ids to `out` and returns that move count.
std::size_t merge_sorted(std::span<const PointId> left, std::span<const PointId> right,
                         const PointSet& points, std::size_t dim, std::span<PointId> out);

std::vector<PointId> merge_sorted(std::span<const PointId> left, std::span<const PointId> right,
                                  const PointSet& points, std::size_t dim);

} // namespace lrt
