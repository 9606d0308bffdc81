#pragma once

#include <cstdint>
#include <vector>

namespace lrt {

// Operation counters filled in by queries. Callers own the accumulator; one
// per concurrent query.
struct QueryStats {
    std::uint64_t nodes_visited = 0;   // tree slots examined while descending
    std::uint64_t binary_searches = 0; // lower_bound calls on sorted arrays
    std::uint64_t bridge_follows = 0;  // O(1) parent-to-child position hops
    std::uint64_t reported = 0;        // points reported or counted
    std::uint64_t cascade_calls = 0;   // 2D cascade queries issued

    QueryStats& operator+=(const QueryStats& o) noexcept {
        nodes_visited += o.nodes_visited;
        binary_searches += o.binary_searches;
        bridge_follows += o.bridge_follows;
        reported += o.reported;
        cascade_calls += o.cascade_calls;
        return *this;
    }
    friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

// Construction accounting. Level j is the tree keyed on dimension j; its
// entries are the real points stored in the sorted lists of its nodes.
struct BuildStats {
    std::uint64_t merge_moves = 0;   // real elements written by merges
    std::uint64_t phantom_moves = 0; // padding entries written by merges
    std::vector<std::uint64_t> level_entries;
    std::vector<std::uint64_t> level_phantom_entries;
    std::uint64_t structures = 0;    // implicit trees built, all levels

    void add_entries(std::size_t level, std::uint64_t real, std::uint64_t phantom) {
        if (level_entries.size() <= level) {
            level_entries.resize(level + 1, 0);
            level_phantom_entries.resize(level + 1, 0);
        }
        level_entries[level] += real;
        level_phantom_entries[level] += phantom;
    }

    std::uint64_t total_entries() const noexcept {
        std::uint64_t total = 0;
        for (auto e : level_entries) total += e;
        return total;
    }
};

} // namespace lrt
