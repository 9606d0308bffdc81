#include "lrt_cli/bench.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lrt/io.hpp"
#include "lrt/layered_range_tree.hpp"
#include "lrt/oracle.hpp"

namespace lrt::cli {

std::vector<BenchRecord> run_bench(const BenchConfig& cfg,
                                   const std::function<void(const BenchRecord&)>& on_record) {
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRecord> records;

    BoxConfig box_cfg;
    box_cfg.seed = cfg.seed + 1;
    box_cfg.count = cfg.queries;
    box_cfg.dims = cfg.dims;
    box_cfg.shape = BoxConfig::Shape::Selectivity;
    box_cfg.selectivity = cfg.selectivity;
    const std::vector<QueryBox> boxes = gen_boxes(box_cfg);

    for (std::uint64_t n : cfg.sizes) {
        GeneratorConfig gen;
        gen.seed = cfg.seed;
        gen.n = n;
        gen.dims = cfg.dims;
        PointSet points = gen_points(gen);

        const auto build_start = Clock::now();
        const LayeredRangeTree tree(std::move(points));
        const auto build_end = Clock::now();

        QueryStats stats;
        std::uint64_t total_k = 0;
        const auto query_start = Clock::now();
        for (const QueryBox& box : boxes) {
            total_k += tree.query(box, stats).size();
        }
        const auto query_end = Clock::now();

        const double q = static_cast<double>(boxes.size());
        BenchRecord r;
        r.n = n;
        r.d = cfg.dims;
        r.build_ms = std::chrono::duration<double, std::milli>(build_end - build_start).count();
        r.queries = boxes.size();
        r.avg_query_us =
            std::chrono::duration<double, std::micro>(query_end - query_start).count() / q;
        r.avg_nodes_visited = static_cast<double>(stats.nodes_visited) / q;
        r.avg_binary_searches = static_cast<double>(stats.binary_searches) / q;
        r.avg_bridge_follows = static_cast<double>(stats.bridge_follows) / q;
        r.total_k = total_k;

        records.push_back(r);
        if (on_record) on_record(r);
    }
    return records;
}

void write_bench_row(std::ostream& out, const BenchRecord& r) {
    auto fixed3 = [](double v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << v;
        return s.str();
    };
    out << r.n << ',' << r.d << ',' << fixed3(r.build_ms) << ',' << r.queries << ','
        << fixed3(r.avg_query_us) << ',' << io::format_double(r.avg_nodes_visited) << ','
        << io::format_double(r.avg_binary_searches) << ','
        << io::format_double(r.avg_bridge_follows) << ',' << r.total_k << '\n';
}

} // namespace lrt::cli
