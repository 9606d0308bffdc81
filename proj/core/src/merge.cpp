#include "lrt/merge.hpp"

#include <algorithm>
#include <cassert>

namespace lrt {

std::size_t merge_sorted(std::span<const PointId> left, std::span<const PointId> right,
                         const PointSet& points, std::size_t dim, std::span<PointId> out) {
    assert(out.size() == left.size() + right.size());
    std::size_t i = 0, j = 0, k = 0;
    while (i < left.size() && j < right.size()) {
        // Take from the right only when strictly smaller; keeps the merge stable.
        if (compare_composite(points, right[j], left[i], dim) < 0) {
            out[k++] = right[j++];
        } else {
            out[k++] = left[i++];
        }
    }
    while (i < left.size()) out[k++] = left[i++];
    while (j < right.size()) out[k++] = right[j++];
    return k;
}

std::vector<PointId> merge_sorted(std::span<const PointId> left, std::span<const PointId> right,
                                  const PointSet& points, std::size_t dim) {
    std::vector<PointId> out(left.size() + right.size());
    merge_sorted(left, right, points, dim, out);
    return out;
}

} // namespace lrt
