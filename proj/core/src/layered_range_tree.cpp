#include "lrt/layered_range_tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lrt/error.hpp"
#include "lrt/merge.hpp"

namespace lrt {

LayeredRangeTree::LayeredRangeTree(PointSet points)
    : points_(std::make_unique<const PointSet>(std::move(points))) {
    const PointSet& pts = *points_;
    if (pts.empty()) {
        throw EmptyInput("cannot build a range tree over no points");
    }
    const std::size_t d = pts.dims();

    std::vector<PointId> order(pts.size());
    std::iota(order.begin(), order.end(), PointId{0});
    std::sort(order.begin(), order.end(), CompositeLess{&pts, 0});

    if (d >= 2) {
        cascades_ = std::make_unique<CascadeStore>(pts, d - 2, d - 1);
    }
    if (d == 2) {
        cascades_->build(order, &build_stats_);
    } else {
        // d == 1 keeps just the padded leaf row of a range tree on dimension 0.
        build_range(order, 0);
    }
}

std::uint32_t LayeredRangeTree::build_associated(std::span<const PointId> sorted,
                                                 std::size_t dim) {
    if (dim + 2 == dims()) {
        return cascades_->build(sorted, &build_stats_);
    }
    return build_range(sorted, dim);
}

std::uint32_t LayeredRangeTree::build_range(std::span<const PointId> sorted, std::size_t dim) {
    const PointSet& pts = *points_;
    const std::size_t m = sorted.size();
    const std::size_t leaves = heap::padded_leaf_count(m);
    const std::size_t height = heap::height(leaves);
    const std::size_t slot_count = 2 * leaves - 1;

    const RangeDesc desc{range_slots_.size(), static_cast<std::uint32_t>(leaves),
                         static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(dim)};
    const auto index = static_cast<std::uint32_t>(ranges_.size());
    ranges_.push_back(desc);
    range_slots_.resize(range_slots_.size() + slot_count);
    range_assoc_.resize(range_assoc_.size() + slot_count, kNoStructure);
    build_implicit_tree(sorted, std::span(range_slots_).subspan(desc.slot_offset, slot_count));
    ++build_stats_.structures;

    if (dim + 1 == dims()) {
        // Only reached for d = 1: the leaf row is the sorted array.
        build_stats_.add_entries(dim, m, leaves - m);
        return index;
    }

    // Bottom-up merge sort on the next dimension. Node s at width w owns the
    // real points [s*w, (s+1)*w) clipped to m, which are contiguous in `cur`.
    const std::size_t next_dim = dim + 1;
    std::vector<PointId> cur(sorted.begin(), sorted.end());
    std::vector<PointId> next(m);

    for (std::size_t depth = height + 1; depth-- > 0;) {
        const std::size_t width = leaves >> depth;
        const std::size_t count = std::size_t{1} << depth;
        if (depth < height) {
            const std::size_t half = width / 2;
            for (std::size_t s = 0; s < count; ++s) {
                const std::size_t first = std::min(s * width, m);
                const std::size_t mid = std::min(s * width + half, m);
                const std::size_t last = std::min(s * width + width, m);
                if (first == last) break;
                build_stats_.merge_moves += merge_sorted(
                    std::span<const PointId>(cur).subspan(first, mid - first),
                    std::span<const PointId>(cur).subspan(mid, last - mid), pts, next_dim,
                    std::span(next).subspan(first, last - first));
            }
            cur.swap(next);
        }
        for (std::size_t s = 0; s < count; ++s) {
            const std::size_t first = std::min(s * width, m);
            const std::size_t last = std::min(s * width + width, m);
            if (first == last) break;
            const std::size_t slot = (std::size_t{1} << depth) - 1 + s;
            const std::uint32_t child = build_associated(
                std::span<const PointId>(cur).subspan(first, last - first), next_dim);
            range_assoc_[desc.slot_offset + slot] = child;
        }
    }
    build_stats_.add_entries(dim, m * (height + 1), 0);
    return index;
}

ImplicitTree LayeredRangeTree::range_tree(std::uint32_t index) const noexcept {
    const RangeDesc& d = ranges_[index];
    return ImplicitTree(*points_,
                        std::span<const PointId>(range_slots_.data() + d.slot_offset,
                                                 2 * std::size_t(d.leaf_count) - 1),
                        d.real_count, d.dim);
}

std::uint32_t LayeredRangeTree::associated(std::uint32_t index, std::size_t slot) const noexcept {
    return range_assoc_[ranges_[index].slot_offset + slot];
}

std::span<const PointId> LayeredRangeTree::sorted_array() const noexcept {
    if (dims() != 1) return {};
    return range_tree(0).leaves();
}

void LayeredRangeTree::check_box(const QueryBox& box) const {
    if (box.dims() != dims()) {
        throw DimensionMismatch("query box has " + std::to_string(box.dims()) +
                                " dimensions, tree has " + std::to_string(dims()));
    }
}

template <class Leaf>
void LayeredRangeTree::descend(std::uint32_t index, const QueryBox& box, QueryStats& stats,
                               std::vector<std::vector<std::size_t>>& scratch,
                               Leaf&& leaf) const {
    const ImplicitTree tree = range_tree(index);
    const std::size_t dim = tree.dim();
    auto& canon = scratch[dim];
    canon.clear();
    canonical_subtrees(tree, SearchKey::below(box.lo[dim]), SearchKey::above(box.hi[dim]), canon,
                       &stats);
    // Deeper calls only touch scratch[dim + 1] and beyond.
    for (std::size_t slot : canon) {
        const std::uint32_t child = associated(index, slot);
        if (dim + 3 == dims()) {
            leaf(child);
        } else {
            descend(child, box, stats, scratch, leaf);
        }
    }
}

std::vector<PointId> LayeredRangeTree::query(const QueryBox& box, QueryStats& stats) const {
    check_box(box);
    std::vector<PointId> out;
    if (box.is_empty()) return out;

    const PointSet& pts = *points_;
    const std::size_t d = dims();
    if (d == 1) {
        const auto leaves = range_tree(0).leaves().first(size());
        const std::size_t first = lower_bound(pts, leaves, SearchKey::below(box.lo[0]), 0, &stats);
        const std::size_t last = lower_bound(pts, leaves, SearchKey::above(box.hi[0]), 0, &stats);
        out.assign(leaves.begin() + static_cast<std::ptrdiff_t>(first),
                   leaves.begin() + static_cast<std::ptrdiff_t>(std::max(first, last)));
        stats.reported += out.size();
    } else {
        auto emit = [&out](PointId p) { out.push_back(p); };
        auto last_two = [&](std::uint32_t cascade) {
            cascades_->query_2d(cascade, box.lo[d - 2], box.hi[d - 2], box.lo[d - 1],
                                box.hi[d - 1], stats, emit);
        };
        if (d == 2) {
            last_two(0);
        } else {
            std::vector<std::vector<std::size_t>> scratch(d);
            descend(0, box, stats, scratch, last_two);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PointId> LayeredRangeTree::query(const QueryBox& box) const {
    QueryStats stats;
    return query(box, stats);
}

std::uint64_t LayeredRangeTree::count(const QueryBox& box, QueryStats& stats) const {
    check_box(box);
    if (box.is_empty()) return 0;

    const PointSet& pts = *points_;
    const std::size_t d = dims();
    if (d == 1) {
        const auto leaves = range_tree(0).leaves().first(size());
        const std::size_t first = lower_bound(pts, leaves, SearchKey::below(box.lo[0]), 0, &stats);
        const std::size_t last = lower_bound(pts, leaves, SearchKey::above(box.hi[0]), 0, &stats);
        const std::uint64_t k = last > first ? last - first : 0;
        stats.reported += k;
        return k;
    }
    std::uint64_t total = 0;
    auto last_two = [&](std::uint32_t cascade) {
        total += cascades_->count_2d(cascade, box.lo[d - 2], box.hi[d - 2], box.lo[d - 1],
                                     box.hi[d - 1], stats);
    };
    if (d == 2) {
        last_two(0);
    } else {
        std::vector<std::vector<std::size_t>> scratch(d);
        descend(0, box, stats, scratch, last_two);
    }
    return total;
}

std::uint64_t LayeredRangeTree::count(const QueryBox& box) const {
    QueryStats stats;
    return count(box, stats);
}

} // namespace lrt
