#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "lrt/point.hpp"
#include "lrt/stats.hpp"

namespace lrt {

// 0-indexed heap layout over a full binary tree.
namespace heap {

constexpr std::size_t left_child(std::size_t i) noexcept { return 2 * i + 1; }
constexpr std::size_t right_child(std::size_t i) noexcept { return 2 * i + 2; }
constexpr std::size_t parent(std::size_t i) noexcept { return (i - 1) / 2; }

constexpr std::size_t depth(std::size_t i) noexcept {
    return static_cast<std::size_t>(std::bit_width(i + 1)) - 1;
}

// Smallest power of two >= n (n >= 1).
constexpr std::size_t padded_leaf_count(std::size_t n) noexcept { return std::bit_ceil(n); }

// log2 of a power of two.
constexpr std::size_t height(std::size_t leaf_count) noexcept {
    return static_cast<std::size_t>(std::countr_zero(leaf_count));
}

} // namespace heap

// Fills `out` (2L-1 slots) with the implicit tree over `sorted`, which must be
// in composite order for the tree's dimension. Leaves hold the points followed
// by kPhantom padding; each internal slot holds the rightmost leaf of its left
// subtree. Linear time.
void build_implicit_tree(std::span<const PointId> sorted, std::span<PointId> out);
std::vector<PointId> build_implicit_tree(std::span<const PointId> sorted);

// Non-owning view of an implicit tree keyed on one dimension of a PointSet.
class ImplicitTree {
public:
    ImplicitTree(const PointSet& points, std::span<const PointId> slots, std::size_t real_count,
                 std::size_t dim) noexcept
        : points_(&points), slots_(slots), leaf_count_((slots.size() + 1) / 2),
          real_count_(real_count), dim_(dim) {}

    const PointSet& points() const noexcept { return *points_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t slot_count() const noexcept { return slots_.size(); }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t real_count() const noexcept { return real_count_; }
    std::size_t height() const noexcept { return heap::height(leaf_count_); }

    PointId key(std::size_t slot) const noexcept { return slots_[slot]; }
    bool is_leaf(std::size_t slot) const noexcept { return slot + 1 >= leaf_count_; }
    std::size_t leaf_slot(std::size_t rank) const noexcept { return leaf_count_ - 1 + rank; }
    std::size_t leaf_rank(std::size_t slot) const noexcept { return slot + 1 - leaf_count_; }

    std::span<const PointId> slots() const noexcept { return slots_; }
    std::span<const PointId> leaves() const noexcept {
        return slots_.subspan(leaf_count_ - 1, leaf_count_);
    }

    // Leaf ranks [first, last) covered by the subtree at `slot`.
    std::size_t first_leaf(std::size_t slot) const noexcept {
        const std::size_t d = heap::depth(slot);
        return (slot + 1 - (std::size_t{1} << d)) * (leaf_count_ >> d);
    }
    std::size_t last_leaf(std::size_t slot) const noexcept {
        return first_leaf(slot) + (leaf_count_ >> heap::depth(slot));
    }
    std::size_t real_leaves_under(std::size_t slot) const noexcept {
        const std::size_t first = first_leaf(slot);
        const std::size_t last = last_leaf(slot);
        if (first >= real_count_) return 0;
        return (last < real_count_ ? last : real_count_) - first;
    }

    // Descent rule: go left iff key <= slot key.
    bool goes_left(const SearchKey& k, std::size_t slot) const noexcept {
        return key_le(*points_, k, slots_[slot], dim_);
    }

private:
    const PointSet* points_;
    std::span<const PointId> slots_;
    std::size_t leaf_count_;
    std::size_t real_count_;
    std::size_t dim_;
};

// Deepest slot where the search paths for lo and hi diverge, or the leaf both
// reach. Requires lo <= hi.
std::size_t find_split_node(const ImplicitTree& tree, const SearchKey& lo, const SearchKey& hi,
                            QueryStats* stats = nullptr);

// Disjoint subtree roots whose real leaves are exactly those with keys in
// [lo, hi], appended to `out`. Subtrees without real leaves are
// never emitted.
void canonical_subtrees(const ImplicitTree& tree, const SearchKey& lo, const SearchKey& hi,
                        std::vector<std::size_t>& out, QueryStats* stats = nullptr);

std::vector<std::size_t> canonical_subtrees(const ImplicitTree& tree, const SearchKey& lo,
                                            const SearchKey& hi);

} // namespace lrt
