#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lrt/io.hpp"
#include "lrt_cli/bench.hpp"
#include "lrt_cli/cli.hpp"
#include "support.hpp"

using namespace lrt;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lrt");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lrt_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }
};

} // namespace

TEST_CASE("gen is deterministic") {
    const auto a = run({"gen", "--n", "3", "--dims", "2", "--seed", "7"});
    const auto b = run({"gen", "--n", "3", "--dims", "2", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);

    const PointSet parsed = io::parse_points(a.out, 2);
    const PointSet direct = testing::uniform_points(7, 3, 2);
    CHECK(std::equal(parsed.flat().begin(), parsed.flat().end(), direct.flat().begin()));
}

TEST_CASE("gen grid:1 writes all zeros") {
    const auto r = run({"gen", "--n", "4", "--dims", "3", "--seed", "1", "--dist", "grid:1"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,0,0\n0,0,0\n0,0,0\n0,0,0\n");
}

TEST_CASE("gen usage and write errors") {
    CHECK(run({"gen", "--n", "0", "--dims", "2", "--seed", "7"}).code == 1);
    CHECK(run({"gen", "--n", "3", "--dims", "0", "--seed", "7"}).code == 1);
    CHECK(run({"gen", "--n", "3", "--dims", "2", "--seed", "7", "--dist", "grid:0"}).code == 1);
    CHECK(run({"gen", "--n", "3", "--dims", "2", "--seed", "7", "--dist", "normal"}).code == 1);
    CHECK(run({"gen", "--n", "3", "--dims", "2"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"gen", "--n", "3", "--dims", "2", "--seed", "7", "--out",
               "/nonexistent-dir/x/points.txt"})
              .code == 2);
}

TEST_CASE("gen writes to a file") {
    TempDir dir;
    const std::string path = (dir.path / "p.txt").string();
    CHECK(run({"gen", "--n", "5", "--dims", "2", "--seed", "3", "--out", path}).code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run({"gen", "--n", "5", "--dims", "2", "--seed", "3"}).out);
}

TEST_CASE("query reports full-range hits") {
    TempDir dir;
    const auto points = dir.file("p.txt", "# four\n1,1\n2,2\n3,3\n4,4\n");
    const auto queries = dir.file("q.txt", "0,0,10,10\n2,2,3,3\n5,0,1,9\n");
    const auto r = run({"query", "--points", points, "--dims", "2", "--queries", queries});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "q=0 k=4\n0: 1,1\n1: 2,2\n2: 3,3\n3: 4,4\n"
          "q=1 k=2\n1: 2,2\n2: 3,3\n"
          "q=2 k=0\n");

    const auto c = run({"query", "--points", points, "--dims", "2", "--queries", queries,
                        "--count-only", "--check"});
    CHECK(c.code == 0);
    CHECK(c.out == "q=0 k=4\nq=1 k=2\nq=2 k=0\n");
}

TEST_CASE("query --check passes on generated workloads") {
    TempDir dir;
    for (std::size_t d : {1u, 2u, 3u}) {
        const auto gen = run({"gen", "--n", "400", "--dims", std::to_string(d), "--seed", "11",
                              "--dist", "grid:6"});
        const auto points = dir.file("p.txt", gen.out);
        std::ostringstream q;
        io::write_queries(q, testing::random_boxes(12, 100, d, 6));
        const auto queries = dir.file("q.txt", q.str());
        const auto r = run({"query", "--points", points, "--dims", std::to_string(d),
                            "--queries", queries, "--check"});
        CHECK_MESSAGE(r.code == 0, r.err);
    }
}

TEST_CASE("query errors") {
    TempDir dir;
    const auto good = dir.file("good.txt", "1,1\n");
    const auto bad = dir.file("bad.txt", "1,1\n2,oops\n");
    const auto queries = dir.file("q.txt", "0,0,1,1\n");

    const auto r = run({"query", "--points", bad, "--dims", "2", "--queries", queries});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);

    CHECK(run({"query", "--points", (dir.path / "missing").string(), "--dims", "2", "--queries",
               queries})
              .code == 2);
    CHECK(run({"query", "--points", good, "--dims", "3", "--queries", queries}).code == 2);
    CHECK(run({"query", "--points", good, "--dims", "2"}).code == 1);
}

TEST_CASE("mismatch detection reports the symmetric difference") {
    const PointSet pts = PointSet::from_rows({{0, 0}, {1, 1}, {2, 2}});
    const std::vector<QueryBox> boxes{QueryBox({0, 0}, {2, 2}), QueryBox({0, 0}, {1, 1})};
    const std::vector<std::vector<PointId>> good{{0, 1, 2}, {0, 1}};
    CHECK_FALSE(cli::check_results(pts, boxes, good).has_value());

    const std::vector<std::vector<PointId>> bad{{0, 1, 2}, {1, 2}};
    const auto m = cli::check_results(pts, boxes, bad);
    REQUIRE(m.has_value());
    CHECK(m->query == 1);
    CHECK(m->missing == std::vector<PointId>{0});
    CHECK(m->unexpected == std::vector<PointId>{2});
    std::ostringstream err;
    cli::write_mismatch(err, *m);
    CHECK(err.str() == "mismatch at query 1: missing [0] unexpected [2]\n");

    const std::vector<std::uint64_t> counts{3, 1};
    const auto cm = cli::check_counts(pts, boxes, counts);
    REQUIRE(cm.has_value());
    CHECK(cm->query == 1);
}

TEST_CASE("bench emits the fixed header and one row per size") {
    const auto r = run({"bench", "--dims", "2", "--sizes", "256,1024", "--queries", "50",
                        "--seed", "5"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2, extra;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == cli::kBenchHeader);
    CHECK(header ==
          "n,d,build_ms,queries,avg_query_us,avg_nodes_visited,avg_binary_searches,"
          "avg_bridge_follows,total_k");
    CHECK(row1.rfind("256,2,", 0) == 0);
    CHECK(row2.rfind("1024,2,", 0) == 0);
    CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("bench records: one binary search per d = 2 query") {
    cli::BenchConfig cfg;
    cfg.dims = 2;
    cfg.sizes = {100, 1000, 5000};
    cfg.queries = 300;
    cfg.seed = 9;
    for (const auto& r : cli::run_bench(cfg)) {
        CHECK(r.avg_binary_searches == 1.0);
        CHECK(r.queries == 300);
        CHECK(r.avg_nodes_visited > 0.0);
    }
}

TEST_CASE("bench usage errors") {
    CHECK(run({"bench", "--dims", "2", "--sizes", "1024,512", "--queries", "5", "--seed", "1"})
              .code == 1);
    CHECK(run({"bench", "--dims", "2", "--sizes", "0", "--queries", "5", "--seed", "1"}).code ==
          1);
    CHECK(run({"bench", "--dims", "2", "--sizes", "10,x", "--queries", "5", "--seed", "1"})
              .code == 1);
    CHECK(run({"bench", "--dims", "2", "--sizes", "10", "--queries", "5", "--seed", "1",
               "--selectivity", "0"})
              .code == 1);
    CHECK(run({"bench", "--dims", "2", "--sizes", "10", "--queries", "5", "--seed", "1",
               "--selectivity", "1.5"})
              .code == 1);
    CHECK(run({"bench", "--dims", "2", "--sizes", "10", "--queries", "0", "--seed", "1"})
              .code == 1);
}
