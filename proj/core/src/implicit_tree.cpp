#include "lrt/implicit_tree.hpp"

#include <algorithm>
#include <cassert>

namespace lrt {

void build_implicit_tree(std::span<const PointId> sorted, std::span<PointId> out) {
    const std::size_t leaves = heap::padded_leaf_count(std::max<std::size_t>(sorted.size(), 1));
    assert(out.size() == 2 * leaves - 1);

    auto leaf_row = out.subspan(leaves - 1, leaves);
    std::copy(sorted.begin(), sorted.end(), leaf_row.begin());
    std::fill(leaf_row.begin() + static_cast<std::ptrdiff_t>(sorted.size()), leaf_row.end(),
              kPhantom);

    // Top-down: slot i at depth t, position s covers leaves [s*w, (s+1)*w).
    for (std::size_t slot = 0; slot + 1 < leaves; ++slot) {
        const std::size_t t = heap::depth(slot);
        const std::size_t width = leaves >> t;
        const std::size_t s = slot + 1 - (std::size_t{1} << t);
        out[slot] = leaf_row[s * width + width / 2 - 1];
    }
}

std::vector<PointId> build_implicit_tree(std::span<const PointId> sorted) {
    const std::size_t leaves = heap::padded_leaf_count(std::max<std::size_t>(sorted.size(), 1));
    std::vector<PointId> slots(2 * leaves - 1);
    build_implicit_tree(sorted, slots);
    return slots;
}

std::size_t find_split_node(const ImplicitTree& tree, const SearchKey& lo, const SearchKey& hi,
                            QueryStats* stats) {
    std::size_t v = 0;
    std::uint64_t visited = 1;
    while (!tree.is_leaf(v)) {
        const bool lo_left = tree.goes_left(lo, v);
        const bool hi_left = tree.goes_left(hi, v);
        if (lo_left != hi_left) break;
        v = lo_left ? heap::left_child(v) : heap::right_child(v);
        ++visited;
    }
    if (stats) stats->nodes_visited += visited;
    return v;
}

void canonical_subtrees(const ImplicitTree& tree, const SearchKey& lo, const SearchKey& hi,
                        std::vector<std::size_t>& out, QueryStats* stats) {
    const PointSet& points = tree.points();
    const std::size_t dim = tree.dim();
    const std::size_t split = find_split_node(tree, lo, hi, stats);
    std::uint64_t visited = 0;

    auto leaf_in_range = [&](std::size_t slot) {
        const PointId p = tree.key(slot);
        return p != kPhantom && compare_key(points, lo, p, dim) <= 0 &&
               compare_key(points, hi, p, dim) >= 0;
    };
    auto emit = [&](std::size_t slot) {
        if (tree.real_leaves_under(slot) > 0) out.push_back(slot);
    };

    if (tree.is_leaf(split)) {
        if (leaf_in_range(split)) out.push_back(split);
        return;
    }

    for (std::size_t v = heap::left_child(split);; ) {
        ++visited;
        if (tree.is_leaf(v)) {
            if (leaf_in_range(v)) out.push_back(v);
            break;
        }
        if (tree.goes_left(lo, v)) {
            emit(heap::right_child(v));
            v = heap::left_child(v);
        } else {
            v = heap::right_child(v);
        }
    }
    for (std::size_t v = heap::right_child(split);; ) {
        ++visited;
        if (tree.is_leaf(v)) {
            if (leaf_in_range(v)) out.push_back(v);
            break;
        }
        if (tree.goes_left(hi, v)) {
            v = heap::left_child(v);
        } else {
            emit(heap::left_child(v));
            v = heap::right_child(v);
        }
    }
    if (stats) stats->nodes_visited += visited;
}

std::vector<std::size_t> canonical_subtrees(const ImplicitTree& tree, const SearchKey& lo,
                                            const SearchKey& hi) {
    std::vector<std::size_t> out;
    canonical_subtrees(tree, lo, hi, out);
    return out;
}

} // namespace lrt
