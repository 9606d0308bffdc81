#include <doctest.h>

#include <algorithm>

#include "cascade_oracle.hpp"
#include "lrt/cascade.hpp"
#include "lrt/error.hpp"
#include "support.hpp"

using namespace lrt;

namespace {

CascadeStructure make_cascade(const PointSet& pts) {
    return CascadeStructure(pts, testing::reference_sorted(pts, testing::all_ids(pts), 0), 0, 1);
}

std::vector<PointId> run_query(const CascadeStructure& cs, const QueryBox& box,
                               QueryStats& stats) {
    std::vector<PointId> out;
    cs.query_2d(box.lo[0], box.hi[0], box.lo[1], box.hi[1], stats,
                [&](PointId p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("lower_bound") {
    const PointSet pts = PointSet::from_rows({{1}, {3}, {5}});
    const std::vector<PointId> entries{0, 1, 2};
    QueryStats stats;
    CHECK(lower_bound(pts, {}, SearchKey::below(7), 0, &stats) == 0);
    CHECK(lower_bound(pts, entries, SearchKey::exact(pts, 1, 0), 0, &stats) == 1);
    CHECK(lower_bound(pts, entries, SearchKey::below(3), 0, &stats) == 1);
    CHECK(lower_bound(pts, entries, SearchKey::above(3), 0, &stats) == 2);
    CHECK(lower_bound(pts, entries, SearchKey::below(6), 0, &stats) == 3);
    CHECK(stats.binary_searches == 5);
}

TEST_CASE("single-point cascade") {
    const PointSet pts = PointSet::from_rows({{4, 9}});
    const auto cs = make_cascade(pts);
    CHECK(cs.tree().leaf_count() == 1);
    const auto root = cs.node(0);
    CHECK(std::vector<PointId>(root.entries.begin(), root.entries.end()) == std::vector<PointId>{0});
    CHECK(root.left_bridge.empty());
    CHECK(root.right_bridge.empty());

    QueryStats stats;
    CHECK(run_query(cs, QueryBox({4, 9}, {4, 9}), stats) == std::vector<PointId>{0});
    CHECK(run_query(cs, QueryBox({4, 10}, {4, 11}), stats).empty());
    CHECK(stats.binary_searches == 2);
}

TEST_CASE("bridges of a parent over child keys [1,5] and [3,7]") {
    // x order puts y = 1,5 under the left child and y = 3,7 under the right.
    const PointSet pts = PointSet::from_rows({{1, 1}, {2, 5}, {3, 3}, {4, 7}});
    const auto cs = make_cascade(pts);
    const auto root = cs.node(0);

    std::vector<double> ys;
    for (PointId p : root.entries) ys.push_back(pts.coord(p, 1));
    CHECK(ys == std::vector<double>{1, 3, 5, 7});
    CHECK(std::vector<std::uint32_t>(root.left_bridge.begin(), root.left_bridge.end()) ==
          std::vector<std::uint32_t>{0, 1, 1, 2});
    CHECK(std::vector<std::uint32_t>(root.right_bridge.begin(), root.right_bridge.end()) ==
          std::vector<std::uint32_t>{0, 0, 1, 1});

    const auto audit = testing::audit_cascade(cs.store(), cs.handle());
    CHECK_MESSAGE(audit.ok(), audit.first_failure);
}

TEST_CASE("node arrays and bridges match the re-sort and linear-scan oracles") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 7u, 8u, 9u, 31u, 33u, 100u, 257u}) {
        for (std::uint64_t side : {0u, 2u, 7u}) {
            const PointSet pts = side ? testing::grid_points(n * 13 + side, n, 2, side)
                                      : testing::uniform_points(n, n, 2);
            const auto cs = make_cascade(pts);
            const auto audit = testing::audit_cascade(cs.store(), cs.handle());
            CHECK_MESSAGE(audit.ok(), "n=", n, " side=", side, ": ", audit.first_failure);
            CHECK(audit.nodes == 2 * std::bit_ceil(n) - 1);
        }
    }
}

TEST_CASE("query_2d examples") {
    const PointSet pts = PointSet::from_rows({{1, 1}, {2, 2}, {3, 3}});
    const auto cs = make_cascade(pts);
    QueryStats stats;
    CHECK(run_query(cs, QueryBox({1, 1}, {2, 2}), stats) == std::vector<PointId>{0, 1});
    CHECK(stats.binary_searches == 1);

    QueryStats above;
    CHECK(run_query(cs, QueryBox({0, 4}, {10, 10}), above).empty());
    CHECK(above.binary_searches == 1);

    QueryStats inverted;
    CHECK(run_query(cs, QueryBox({3, 0}, {1, 10}), inverted).empty());
    CHECK(inverted.binary_searches == 1);
}

TEST_CASE("query_2d matches the oracle with exactly one search per call") {
    const PointSet pts = testing::uniform_points(7, 4096, 2);
    const auto cs = make_cascade(pts);
    const auto boxes = testing::random_boxes(8, 1000, 2);
    for (const auto& box : boxes) {
        QueryStats stats;
        const auto got = run_query(cs, box, stats);
        CHECK(got == brute_force_query(pts, box));
        CHECK(stats.binary_searches == 1);
        CHECK(stats.reported == got.size());
        CHECK(stats.cascade_calls == 1);

        QueryStats count_stats;
        CHECK(cs.count_2d(box.lo[0], box.hi[0], box.lo[1], box.hi[1], count_stats) == got.size());
        CHECK(count_stats.binary_searches == 2);
    }
}

TEST_CASE("positions carried by bridges equal a fresh lower_bound at each canonical node") {
    for (std::uint64_t side : {0u, 5u}) {
        const PointSet pts = side ? testing::grid_points(21, 777, 2, side)
                                  : testing::uniform_points(21, 777, 2);
        const auto cs = make_cascade(pts);
        const auto boxes = testing::random_boxes(22, 300, 2, side);
        std::uint64_t visits = 0;
        for (const auto& box : boxes) {
            const std::array<SearchKey, 2> ykeys{SearchKey::below(box.lo[1]),
                                                 SearchKey::above(box.hi[1])};
            QueryStats stats;
            cs.store().for_each_canonical<2>(
                cs.handle(), SearchKey::below(box.lo[0]), SearchKey::above(box.hi[0]), ykeys,
                stats, [&](std::size_t, const std::array<std::uint32_t, 2>& pos,
                           const CascadeNodeView& nv) {
                    ++visits;
                    for (std::size_t i = 0; i < 2; ++i) {
                        std::size_t expect = 0;
                        while (expect < nv.entries.size() &&
                               compare_key(pts, ykeys[i], nv.entries[expect], 1) > 0) {
                            ++expect;
                        }
                        CHECK(pos[i] == expect);
                    }
                });
        }
        CHECK(visits > 0);
    }
}

TEST_CASE("cascade errors") {
    const PointSet pts = PointSet::from_rows({{1, 2}});
    CHECK_THROWS_AS(CascadeStructure(pts, {}, 0, 1), EmptyInput);
    CHECK_THROWS_AS(CascadeStore(pts, 0, 2), DimensionMismatch);
}

TEST_CASE("build accounting for one cascade") {
    for (std::size_t n : {1u, 3u, 4u, 5u, 100u, 1024u}) {
        const PointSet pts = testing::uniform_points(n, n, 2);
        BuildStats stats;
        CascadeStructure cs(pts, testing::reference_sorted(pts, testing::all_ids(pts), 0), 0, 1,
                            &stats);
        const std::uint64_t leaves = std::bit_ceil(n);
        const std::uint64_t h = static_cast<std::uint64_t>(std::countr_zero(leaves));
        CHECK(stats.merge_moves == n * h);
        CHECK(stats.phantom_moves == (leaves - n) * h);
        REQUIRE(stats.level_entries.size() == 1);
        CHECK(stats.level_entries[0] == n * (h + 1));
        CHECK(stats.level_phantom_entries[0] == (leaves - n) * (h + 1));
    }
}
