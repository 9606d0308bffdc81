#include <benchmark/benchmark.h>

#include "lrt/layered_range_tree.hpp"
#include "lrt/oracle.hpp"

namespace {

lrt::PointSet make_points(std::size_t n, std::size_t dims) {
    lrt::GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.n = n;
    cfg.dims = dims;
    return lrt::gen_points(cfg);
}

std::vector<lrt::QueryBox> make_boxes(std::size_t dims, double selectivity) {
    lrt::BoxConfig cfg;
    cfg.seed = 43;
    cfg.count = 256;
    cfg.dims = dims;
    cfg.shape = lrt::BoxConfig::Shape::Selectivity;
    cfg.selectivity = selectivity;
    return lrt::gen_boxes(cfg);
}

void BM_Build(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dims = static_cast<std::size_t>(state.range(1));
    const lrt::PointSet points = make_points(n, dims);
    for (auto _ : state) {
        lrt::LayeredRangeTree tree(points);
        benchmark::DoNotOptimize(tree.size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Build)
    ->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {1, 2}})
    ->ArgsProduct({{1 << 10, 1 << 13}, {3}})
    ->Unit(benchmark::kMillisecond);

void BM_Query(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dims = static_cast<std::size_t>(state.range(1));
    const lrt::LayeredRangeTree tree(make_points(n, dims));
    const auto boxes = make_boxes(dims, 1e-3);
    lrt::QueryStats stats;
    std::size_t i = 0;
    for (auto _ : state) {
        auto hits = tree.query(boxes[i++ % boxes.size()], stats);
        benchmark::DoNotOptimize(hits.data());
    }
    const double q = static_cast<double>(state.iterations());
    state.counters["nodes"] = static_cast<double>(stats.nodes_visited) / q;
    state.counters["searches"] = static_cast<double>(stats.binary_searches) / q;
    state.counters["bridges"] = static_cast<double>(stats.bridge_follows) / q;
    state.counters["k"] = static_cast<double>(stats.reported) / q;
}
BENCHMARK(BM_Query)
    ->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {1, 2}})
    ->ArgsProduct({{1 << 10, 1 << 13}, {3}});

void BM_Count(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lrt::LayeredRangeTree tree(make_points(n, 2));
    const auto boxes = make_boxes(2, 1e-2);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree.count(boxes[i++ % boxes.size()]));
    }
}
BENCHMARK(BM_Count)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

void BM_BruteForce(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lrt::PointSet points = make_points(n, 2);
    const auto boxes = make_boxes(2, 1e-3);
    std::size_t i = 0;
    for (auto _ : state) {
        auto hits = lrt::brute_force_query(points, boxes[i++ % boxes.size()]);
        benchmark::DoNotOptimize(hits.data());
    }
}
BENCHMARK(BM_BruteForce)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

} // namespace

BENCHMARK_MAIN();
