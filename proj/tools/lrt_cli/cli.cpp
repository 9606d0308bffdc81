#include "lrt_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lrt/error.hpp"
#include "lrt/io.hpp"
#include "lrt/layered_range_tree.hpp"
#include "lrt/oracle.hpp"
#include "lrt_cli/bench.hpp"

namespace lrt::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("cannot read " + path);
    return text;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw UsageError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

GeneratorConfig::Distribution parse_distribution(const std::string& text, std::uint64_t& side) {
    if (text == "uniform") return GeneratorConfig::Distribution::Uniform;
    constexpr std::string_view prefix = "grid:";
    if (text.rfind(prefix, 0) == 0) {
        side = parse_u64(std::string_view(text).substr(prefix.size()), "grid side");
        if (side == 0) throw UsageError("grid side must be >= 1");
        return GeneratorConfig::Distribution::Grid;
    }
    throw UsageError("--dist must be 'uniform' or 'grid:<g>'");
}

std::vector<std::uint64_t> parse_sizes(const std::string& csv) {
    std::vector<std::uint64_t> sizes;
    std::string_view rest = csv;
    while (true) {
        const std::size_t comma = rest.find(',');
        sizes.push_back(parse_u64(rest.substr(0, comma), "size"));
        if (sizes.back() == 0) throw UsageError("sizes must be positive");
        if (sizes.size() > 1 && sizes.back() <= sizes[sizes.size() - 2]) {
            throw UsageError("sizes must be ascending");
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return sizes;
}

struct GenArgs {
    std::uint64_t n = 0;
    std::size_t dims = 0;
    std::uint64_t seed = 0;
    std::string dist = "uniform";
    std::string out = "-";
};

struct QueryArgs {
    std::string points;
    std::size_t dims = 0;
    std::string queries;
    bool count_only = false;
    bool check = false;
};

struct BenchArgs {
    std::size_t dims = 0;
    std::string sizes;
    std::size_t queries = 0;
    std::uint64_t seed = 0;
    double selectivity = 1e-3;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    if (a.n == 0) throw UsageError("--n must be >= 1");
    if (a.dims == 0) throw UsageError("--dims must be >= 1");
    GeneratorConfig cfg;
    cfg.seed = a.seed;
    cfg.n = a.n;
    cfg.dims = a.dims;
    cfg.distribution = parse_distribution(a.dist, cfg.grid_side);
    const PointSet points = gen_points(cfg);

    if (a.out == "-" || a.out == "stdout") {
        io::write_points(out, points);
        out.flush();
        if (!out) throw IoFailure("write to stdout failed");
        return kOk;
    }
    std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open " + a.out + " for writing");
    io::write_points(file, points);
    file.close();
    if (!file) throw IoFailure("write to " + a.out + " failed");
    return kOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out, std::ostream& err) {
    if (a.dims == 0) throw UsageError("--dims must be >= 1");
    PointSet points = io::parse_points(read_file(a.points), a.dims);
    const std::vector<QueryBox> boxes = io::parse_queries(read_file(a.queries), a.dims);
    const LayeredRangeTree tree(std::move(points));

    std::optional<Mismatch> mismatch;
    if (a.count_only) {
        std::vector<std::uint64_t> counts;
        counts.reserve(boxes.size());
        for (const QueryBox& box : boxes) counts.push_back(tree.count(box));
        io::write_counts(out, counts);
        if (a.check) mismatch = check_counts(tree.points(), boxes, counts);
    } else {
        std::vector<std::vector<PointId>> results;
        results.reserve(boxes.size());
        for (const QueryBox& box : boxes) results.push_back(tree.query(box));
        io::write_report(out, tree.points(), results);
        if (a.check) mismatch = check_results(tree.points(), boxes, results);
    }
    out.flush();
    if (mismatch) {
        write_mismatch(err, *mismatch);
        return kMismatch;
    }
    return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (a.dims == 0) throw UsageError("--dims must be >= 1");
    if (a.queries == 0) throw UsageError("--queries must be >= 1");
    if (!(a.selectivity > 0.0 && a.selectivity <= 1.0)) {
        throw UsageError("--selectivity must be in (0, 1]");
    }
    BenchConfig cfg;
    cfg.dims = a.dims;
    cfg.sizes = parse_sizes(a.sizes);
    cfg.queries = a.queries;
    cfg.seed = a.seed;
    cfg.selectivity = a.selectivity;

    out << kBenchHeader << '\n';
    run_bench(cfg, [&out](const BenchRecord& r) {
        write_bench_row(out, r);
        out.flush();
    });
    return kOk;
}

void write_ids(std::ostream& os, const std::vector<PointId>& ids) {
    os << '[';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) os << ',';
        os << ids[i];
    }
    os << ']';
}

} // namespace

std::optional<Mismatch> check_results(const PointSet& points, std::span<const QueryBox> boxes,
                                      std::span<const std::vector<PointId>> results) {
    for (std::size_t q = 0; q < boxes.size(); ++q) {
        const std::vector<PointId> expected = brute_force_query(points, boxes[q]);
        std::vector<PointId> got = results[q];
        std::sort(got.begin(), got.end());
        if (got == expected) continue;
        Mismatch m;
        m.query = q;
        std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                            std::back_inserter(m.missing));
        std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                            std::back_inserter(m.unexpected));
        return m;
    }
    return std::nullopt;
}

std::optional<Mismatch> check_counts(const PointSet& points, std::span<const QueryBox> boxes,
                                     std::span<const std::uint64_t> counts) {
    for (std::size_t q = 0; q < boxes.size(); ++q) {
        if (brute_force_query(points, boxes[q]).size() != counts[q]) {
            return Mismatch{q, {}, {}};
        }
    }
    return std::nullopt;
}

void write_mismatch(std::ostream& err, const Mismatch& m) {
    err << "mismatch at query " << m.query << ": missing ";
    write_ids(err, m.missing);
    err << " unexpected ";
    write_ids(err, m.unexpected);
    err << '\n';
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Static orthogonal range search with layered range trees", "lrt"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a deterministic point file");
    gen_cmd->add_option("--n", gen.n, "Number of points")->required();
    gen_cmd->add_option("--dims", gen.dims, "Dimensions")->required();
    gen_cmd->add_option("--seed", gen.seed, "splitmix64 seed")->required();
    gen_cmd->add_option("--dist", gen.dist, "uniform | grid:<g>");
    gen_cmd->add_option("--out", gen.out, "Output path; '-' or 'stdout' for standard output");

    QueryArgs query;
    auto* query_cmd = app.add_subcommand("query", "Answer a query file against a point file");
    query_cmd->add_option("--points", query.points, "Point file")->required();
    query_cmd->add_option("--dims", query.dims, "Dimensions")->required();
    query_cmd->add_option("--queries", query.queries, "Query file")->required();
    query_cmd->add_flag("--count-only", query.count_only, "Print counts only");
    query_cmd->add_flag("--check", query.check, "Verify every answer by brute force");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark build and query cost, CSV on stdout");
    bench_cmd->add_option("--dims", bench.dims, "Dimensions")->required();
    bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated ascending point counts")
        ->required();
    bench_cmd->add_option("--queries", bench.queries, "Queries per size")->required();
    bench_cmd->add_option("--seed", bench.seed, "splitmix64 seed")->required();
    bench_cmd->add_option("--selectivity", bench.selectivity, "Expected hit fraction (0,1]");

    std::vector<std::string> argv;
    for (std::size_t i = args.size(); i-- > 1;) argv.push_back(args[i]);
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*query_cmd) return cmd_query(query, out, err);
        if (*bench_cmd) return cmd_bench(bench, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

} // namespace lrt::cli
