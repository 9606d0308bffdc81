#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace lrt::cli {

struct BenchRecord {
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    double build_ms = 0.0;
    std::uint64_t queries = 0;
    double avg_query_us = 0.0;
    double avg_nodes_visited = 0.0;
    double avg_binary_searches = 0.0;
    double avg_bridge_follows = 0.0;
    std::uint64_t total_k = 0;
};

struct BenchConfig {
    std::size_t dims = 2;
    std::vector<std::uint64_t> sizes;
    std::size_t queries = 1000;
    std::uint64_t seed = 42;
    double selectivity = 1e-3;
};

inline constexpr const char* kBenchHeader =
    "n,d,build_ms,queries,avg_query_us,avg_nodes_visited,avg_binary_searches,"
    "avg_bridge_follows,total_k";

// Points come from gen_points(seed, n, dims, uniform); boxes from a
// selectivity-shaped stream seeded with seed + 1, so every n sees the same
// boxes. `on_record` is called as each size finishes.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg,
                                   const std::function<void(const BenchRecord&)>& on_record = {});

void write_bench_row(std::ostream& out, const BenchRecord& r);

} // namespace lrt::cli
