#include "lrt/cascade.hpp"

#include <algorithm>

#include "lrt/error.hpp"

namespace lrt {

std::size_t lower_bound(const PointSet& points, std::span<const PointId> entries,
                        const SearchKey& key, std::size_t dim, QueryStats* stats) {
    if (stats) ++stats->binary_searches;
    std::size_t lo = 0;
    std::size_t hi = entries.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (compare_key(points, key, entries[mid], dim) > 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

CascadeStore::CascadeStore(const PointSet& points, std::size_t x_dim, std::size_t y_dim)
    : points_(&points), x_dim_(x_dim), y_dim_(y_dim) {
    if (x_dim >= points.dims() || y_dim >= points.dims()) {
        throw DimensionMismatch("cascade dimensions out of range");
    }
}

CascadeStore::Handle CascadeStore::build(std::span<const PointId> sorted_by_x,
                                         BuildStats* stats) {
    if (sorted_by_x.empty()) {
        throw EmptyInput("cascade over no points");
    }
    const std::size_t m = sorted_by_x.size();
    const std::size_t leaves = heap::padded_leaf_count(m);
    const std::size_t height = heap::height(leaves);

    Desc desc{slots_.size(), entries_.size(), left_bridge_.size(),
              static_cast<std::uint32_t>(leaves), static_cast<std::uint32_t>(m)};

    slots_.resize(slots_.size() + 2 * leaves - 1);
    build_implicit_tree(sorted_by_x, std::span(slots_).subspan(desc.slot_offset, 2 * leaves - 1));

    entries_.resize(entries_.size() + leaves * (height + 1));
    left_bridge_.resize(left_bridge_.size() + leaves * height);
    right_bridge_.resize(right_bridge_.size() + leaves * height);

    PointId* rows = entries_.data() + desc.entry_offset;
    std::uint32_t* lbr = left_bridge_.data() + desc.bridge_offset;
    std::uint32_t* rbr = right_bridge_.data() + desc.bridge_offset;

    // Leaf row: x order, phantoms on the right.
    PointId* leaf_row = rows + height * leaves;
    std::copy(sorted_by_x.begin(), sorted_by_x.end(), leaf_row);
    std::fill(leaf_row + m, leaf_row + leaves, kPhantom);

    std::uint64_t moves = 0;
    std::uint64_t phantom_moves = 0;
    auto reals_in = [m](std::size_t first, std::size_t width) -> std::size_t {
        if (first >= m) return 0;
        return std::min(width, m - first);
    };

    for (std::size_t depth = height; depth-- > 0;) {
        const std::size_t width = leaves >> depth;
        const std::size_t half = width / 2;
        const std::size_t count = std::size_t{1} << depth;
        for (std::size_t s = 0; s < count; ++s) {
            const PointId* left = rows + (depth + 1) * leaves + s * width;
            const PointId* right = left + half;
            PointId* out = rows + depth * leaves + s * width;
            std::uint32_t* lb = lbr + depth * leaves + s * width;
            std::uint32_t* rb = rbr + depth * leaves + s * width;

            const std::size_t left_real = reals_in(s * width, half);
            const std::size_t right_real = reals_in(s * width + half, half);

            // Each output records both input cursors: the first index in each
            // child whose key is not below the element just written.
            std::size_t i = 0, j = 0, k = 0;
            auto take_left = [&] { lb[k] = std::uint32_t(i); rb[k] = std::uint32_t(j); out[k++] = left[i++]; };
            auto take_right = [&] { lb[k] = std::uint32_t(i); rb[k] = std::uint32_t(j); out[k++] = right[j++]; };

            while (i < left_real && j < right_real) {
                if (compare_composite(*points_, right[j], left[i], y_dim_) < 0) {
                    take_right();
                } else {
                    take_left();
                }
            }
            while (i < left_real) take_left();
            while (j < right_real) take_right();
            moves += k;
            while (i < half) take_left();
            while (j < half) take_right();
            phantom_moves += k - (left_real + right_real);
        }
    }

    if (stats) {
        stats->merge_moves += moves;
        stats->phantom_moves += phantom_moves;
        stats->add_entries(x_dim_, m * (height + 1), (leaves - m) * (height + 1));
        ++stats->structures;
    }

    descs_.push_back(desc);
    return static_cast<Handle>(descs_.size() - 1);
}

ImplicitTree CascadeStore::tree(Handle h) const noexcept {
    const Desc& d = descs_[h];
    return ImplicitTree(*points_,
                        std::span<const PointId>(slots_.data() + d.slot_offset, 2 * d.leaf_count - 1),
                        d.real_count, x_dim_);
}

CascadeNodeView CascadeStore::node(Handle h, std::size_t slot) const noexcept {
    const Desc& d = descs_[h];
    const std::size_t leaves = d.leaf_count;
    const std::size_t depth = heap::depth(slot);
    const std::size_t width = leaves >> depth;
    const std::size_t s = slot + 1 - (std::size_t{1} << depth);
    const std::size_t row = depth * leaves + s * width;

    CascadeNodeView nv;
    nv.entries = std::span<const PointId>(entries_.data() + d.entry_offset + row, width);
    if (width > 1) {
        nv.left_bridge = std::span<const std::uint32_t>(left_bridge_.data() + d.bridge_offset + row, width);
        nv.right_bridge = std::span<const std::uint32_t>(right_bridge_.data() + d.bridge_offset + row, width);
    }
    const std::size_t first = s * width;
    nv.real_count = first >= d.real_count ? 0 : std::min<std::size_t>(width, d.real_count - first);
    return nv;
}

std::uint64_t CascadeStore::count_2d(Handle h, double xlo, double xhi, double ylo, double yhi,
                                     QueryStats& stats) const {
    ++stats.cascade_calls;
    std::uint64_t total = 0;
    const std::array<SearchKey, 2> ykeys{SearchKey::below(ylo), SearchKey::above(yhi)};
    for_each_canonical<2>(h, SearchKey::below(xlo), SearchKey::above(xhi), ykeys, stats,
                          [&](std::size_t, const std::array<std::uint32_t, 2>& pos,
                              const CascadeNodeView&) {
                              if (pos[1] > pos[0]) total += pos[1] - pos[0];
                          });
    stats.reported += total;
    return total;
}

} // namespace lrt
