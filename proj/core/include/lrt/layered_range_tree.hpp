#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lrt/cascade.hpp"
#include "lrt/implicit_tree.hpp"
#include "lrt/point.hpp"
#include "lrt/stats.hpp"

namespace lrt {

/// Static d-dimensional range tree whose last two dimensions use fractional
/// cascading.
///
/// Dimensions 0..d-3 are implicit-array range trees: every node of the tree on
/// dimension j owns an associated structure over dimensions j+1..d-1 holding
/// exactly the real points below that node. Dimensions d-2 and d-1 are handled
/// by a CascadeStore. For d = 1 the structure is a padded sorted array, for
/// d = 2 a single cascade.
///
/// Reporting runs in O(log^{d-1} n + k), counting in O(log^{d-1} n), and the
/// structure stores O(n log^{d-1} n) entries. Immutable after construction;
/// concurrent queries are safe with one QueryStats per caller.
class LayeredRangeTree {
public:
    static constexpr std::uint32_t kNoStructure = 0xFFFFFFFFu;

    /// Builds over `points`. Throws EmptyInput when the set is empty.
    explicit LayeredRangeTree(PointSet points);

    LayeredRangeTree(LayeredRangeTree&&) noexcept = default;
    LayeredRangeTree& operator=(LayeredRangeTree&&) noexcept = default;

    std::size_t dims() const noexcept { return points_->dims(); }
    std::size_t size() const noexcept { return points_->size(); }
    const PointSet& points() const noexcept { return *points_; }
    const BuildStats& build_stats() const noexcept { return build_stats_; }

    /// Ids of all points inside `box`, ascending. Throws DimensionMismatch.
    std::vector<PointId> query(const QueryBox& box, QueryStats& stats) const;
    std::vector<PointId> query(const QueryBox& box) const;

    /// Number of points inside `box`; never enumerates them.
    std::uint64_t count(const QueryBox& box, QueryStats& stats) const;
    std::uint64_t count(const QueryBox& box) const;

    // Introspection, mostly for tests.
    std::size_t range_structure_count() const noexcept { return ranges_.size(); }
    ImplicitTree range_tree(std::uint32_t index) const noexcept;
    std::uint32_t associated(std::uint32_t index, std::size_t slot) const noexcept;
    const CascadeStore* cascades() const noexcept { return cascades_.get(); }
    /// d = 1 only: the padded sorted array (ids, kPhantom tail).
    std::span<const PointId> sorted_array() const noexcept;

private:
    struct RangeDesc {
        std::size_t slot_offset;
        std::uint32_t leaf_count;
        std::uint32_t real_count;
        std::uint32_t dim;
    };

    std::uint32_t build_range(std::span<const PointId> sorted, std::size_t dim);
    std::uint32_t build_associated(std::span<const PointId> sorted, std::size_t dim);

    template <class Leaf>
    void descend(std::uint32_t index, const QueryBox& box, QueryStats& stats,
                 std::vector<std::vector<std::size_t>>& scratch, Leaf&& leaf) const;

    void check_box(const QueryBox& box) const;

    std::unique_ptr<const PointSet> points_;
    std::vector<RangeDesc> ranges_;
    std::vector<PointId> range_slots_;
    std::vector<std::uint32_t> range_assoc_;
    std::unique_ptr<CascadeStore> cascades_;
    BuildStats build_stats_;
};

} // namespace lrt
