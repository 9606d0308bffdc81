#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrt/implicit_tree.hpp"
#include "lrt/point.hpp"
#include "lrt/stats.hpp"

namespace lrt {

// Smallest index whose entry is >= key under composite order on `dim`
// (entries.size() if none). Counts one binary search.
std::size_t lower_bound(const PointSet& points, std::span<const PointId> entries,
                        const SearchKey& key, std::size_t dim, QueryStats* stats = nullptr);

// One node of a cascade: its points sorted by the y coordinate (phantoms at
// the tail) and, for internal nodes, the bridges into each child's array.
// left_bridge[t] is the first left-child index whose key is >= entries[t].
struct CascadeNodeView {
    std::span<const PointId> entries;
    std::span<const std::uint32_t> left_bridge;
    std::span<const std::uint32_t> right_bridge;
    std::size_t real_count = 0;
};

// Arena of fractional-cascading structures over dimensions (x_dim, y_dim) of
// one PointSet. Each structure is an implicit tree keyed on x whose nodes
// carry y-sorted arrays. Arrays of depth t sit in one row of L entries, so
// a node's array is addressed by index arithmetic alone.
class CascadeStore {
public:
    using Handle = std::uint32_t;

    CascadeStore(const PointSet& points, std::size_t x_dim, std::size_t y_dim);

    // `sorted_by_x` must be in composite order on x_dim. Throws EmptyInput.
    Handle build(std::span<const PointId> sorted_by_x, BuildStats* stats = nullptr);

    std::size_t size() const noexcept { return descs_.size(); }
    const PointSet& points() const noexcept { return *points_; }
    std::size_t x_dim() const noexcept { return x_dim_; }
    std::size_t y_dim() const noexcept { return y_dim_; }

    ImplicitTree tree(Handle h) const noexcept;
    CascadeNodeView node(Handle h, std::size_t slot) const noexcept;

    // Reports every point in [xlo,xhi] x [ylo,yhi] to `emit`. Performs exactly
    // one binary search, at the split node; every other array position comes
    // from a bridge.
    template <class Emit>
    void query_2d(Handle h, double xlo, double xhi, double ylo, double yhi, QueryStats& stats,
                  Emit&& emit) const;

    // Number of points in the box without enumerating them. Two binary
    // searches (one per y bound) at the split node.
    std::uint64_t count_2d(Handle h, double xlo, double xhi, double ylo, double yhi,
                           QueryStats& stats) const;

    // Walks the canonical decomposition of [xlo,xhi] carrying K array
    // positions, one per key in `ykeys`. Calls visit(slot, positions, node)
    // for every canonical subtree root holding real points. positions[i] is
    // the lower_bound of ykeys[i] in that node's array.
    template <std::size_t K, class Visit>
    void for_each_canonical(Handle h, const SearchKey& xlo, const SearchKey& xhi,
                            const std::array<SearchKey, K>& ykeys, QueryStats& stats,
                            Visit&& visit) const;

    std::size_t memory_entries() const noexcept { return entries_.size(); }

private:
    struct Desc {
        std::size_t slot_offset;
        std::size_t entry_offset;
        std::size_t bridge_offset;
        std::uint32_t leaf_count;
        std::uint32_t real_count;
    };

    std::uint32_t child_position(const CascadeNodeView& parent, std::uint32_t t, bool left,
                                 std::size_t child_len) const noexcept {
        if (t >= parent.entries.size()) return static_cast<std::uint32_t>(child_len);
        return left ? parent.left_bridge[t] : parent.right_bridge[t];
    }

    const PointSet* points_;
    std::size_t x_dim_;
    std::size_t y_dim_;
    std::vector<Desc> descs_;
    std::vector<PointId> slots_;
    std::vector<PointId> entries_;
    std::vector<std::uint32_t> left_bridge_;
    std::vector<std::uint32_t> right_bridge_;
};

// A single cascade owning its storage.
class CascadeStructure {
public:
    CascadeStructure(const PointSet& points, std::span<const PointId> sorted_by_x,
                     std::size_t x_dim, std::size_t y_dim, BuildStats* stats = nullptr)
        : store_(points, x_dim, y_dim), handle_(store_.build(sorted_by_x, stats)) {}

    ImplicitTree tree() const noexcept { return store_.tree(handle_); }
    CascadeNodeView node(std::size_t slot) const noexcept { return store_.node(handle_, slot); }

    template <class Emit>
    void query_2d(double xlo, double xhi, double ylo, double yhi, QueryStats& stats,
                  Emit&& emit) const {
        store_.query_2d(handle_, xlo, xhi, ylo, yhi, stats, std::forward<Emit>(emit));
    }
    std::uint64_t count_2d(double xlo, double xhi, double ylo, double yhi,
                           QueryStats& stats) const {
        return store_.count_2d(handle_, xlo, xhi, ylo, yhi, stats);
    }

    const CascadeStore& store() const noexcept { return store_; }
    CascadeStore::Handle handle() const noexcept { return handle_; }

private:
    CascadeStore store_;
    CascadeStore::Handle handle_;
};

template <std::size_t K, class Visit>
void CascadeStore::for_each_canonical(Handle h, const SearchKey& xlo, const SearchKey& xhi,
                                      const std::array<SearchKey, K>& ykeys, QueryStats& stats,
                                      Visit&& visit) const {
    using Positions = std::array<std::uint32_t, K>;
    const ImplicitTree t = tree(h);
    const PointSet& pts = *points_;

    auto search = [&](std::size_t slot) {
        const CascadeNodeView nv = node(h, slot);
        Positions pos{};
        for (std::size_t i = 0; i < K; ++i) {
            pos[i] = static_cast<std::uint32_t>(
                lower_bound(pts, nv.entries, ykeys[i], y_dim_, &stats));
        }
        return pos;
    };

    // An inverted x-range holds nothing; keep the per-call search count.
    if (xlo.value > xhi.value) {
        search(0);
        return;
    }

    const std::size_t split = find_split_node(t, xlo, xhi, &stats);
    const Positions at_split = search(split);

    auto leaf_in_range = [&](std::size_t slot) {
        const PointId p = t.key(slot);
        return p != kPhantom && compare_key(pts, xlo, p, x_dim_) <= 0 &&
               compare_key(pts, xhi, p, x_dim_) >= 0;
    };
    auto follow = [&](const CascadeNodeView& parent, const Positions& pos, bool left) {
        const std::size_t child_len = parent.entries.size() / 2;
        Positions out{};
        for (std::size_t i = 0; i < K; ++i) {
            out[i] = child_position(parent, pos[i], left, child_len);
        }
        stats.bridge_follows += K;
        return out;
    };

    if (t.is_leaf(split)) {
        if (leaf_in_range(split)) visit(split, at_split, node(h, split));
        return;
    }

    const CascadeNodeView split_node = node(h, split);
    std::uint64_t visited = 0;

    // Path of xlo below the split: right siblings are fully inside.
    {
        std::size_t v = heap::left_child(split);
        Positions pos = follow(split_node, at_split, true);
        for (;;) {
            ++visited;
            if (t.is_leaf(v)) {
                if (leaf_in_range(v)) visit(v, pos, node(h, v));
                break;
            }
            const CascadeNodeView nv = node(h, v);
            if (t.goes_left(xlo, v)) {
                const std::size_t sibling = heap::right_child(v);
                if (t.real_leaves_under(sibling) > 0) {
                    visit(sibling, follow(nv, pos, false), node(h, sibling));
                }
                pos = follow(nv, pos, true);
                v = heap::left_child(v);
            } else {
                pos = follow(nv, pos, false);
                v = heap::right_child(v);
            }
        }
    }
    // Path of xhi below the split: left siblings are fully inside.
    {
        std::size_t v = heap::right_child(split);
        Positions pos = follow(split_node, at_split, false);
        for (;;) {
            ++visited;
            if (t.is_leaf(v)) {
                if (leaf_in_range(v)) visit(v, pos, node(h, v));
                break;
            }
            const CascadeNodeView nv = node(h, v);
            if (t.goes_left(xhi, v)) {
                pos = follow(nv, pos, true);
                v = heap::left_child(v);
            } else {
                const std::size_t sibling = heap::left_child(v);
                if (t.real_leaves_under(sibling) > 0) {
                    visit(sibling, follow(nv, pos, true), node(h, sibling));
                }
                pos = follow(nv, pos, false);
                v = heap::right_child(v);
            }
        }
    }
    stats.nodes_visited += visited;
}

template <class Emit>
void CascadeStore::query_2d(Handle h, double xlo, double xhi, double ylo, double yhi,
                            QueryStats& stats, Emit&& emit) const {
    ++stats.cascade_calls;
    const PointSet& pts = *points_;
    const std::array<SearchKey, 1> ykeys{SearchKey::below(ylo)};
    for_each_canonical<1>(
        h, SearchKey::below(xlo), SearchKey::above(xhi), ykeys, stats,
        [&](std::size_t, const std::array<std::uint32_t, 1>& pos, const CascadeNodeView& nv) {
            for (std::size_t i = pos[0]; i < nv.real_count; ++i) {
                const PointId p = nv.entries[i];
                if (pts.coord(p, y_dim_) > yhi) break;
                ++stats.reported;
                emit(p);
            }
        });
}

} // namespace lrt
