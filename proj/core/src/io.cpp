#include "lrt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "lrt/error.hpp"

namespace lrt::io {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

// Splits a line on commas and whitespace runs. An empty field between two
// commas is reported as an error.
std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    bool after_comma = false;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i == line.size()) break;
        if (line[i] == ',') {
            if (after_comma || fields.empty()) throw ParseError(line_no, "empty field");
            after_comma = true;
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]) && line[i] != ',') ++i;
        fields.push_back(line.substr(start, i - start));
        after_comma = false;
    }
    if (after_comma) throw ParseError(line_no, "empty field");
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    std::string_view digits = field;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError(line_no, "value out of range: '" + std::string(field) + "'");
    }
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ParseError(line_no, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line_no, "non-finite value: '" + std::string(field) + "'");
    }
    return value;
}

// Calls row(line_no, values) for every data line with exactly `arity` numbers.
template <class Row>
std::size_t for_each_row(std::string_view text, std::size_t arity, Row&& row) {
    std::size_t line_no = 0;
    std::size_t rows = 0;
    std::vector<double> values(arity);
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        std::size_t first = 0;
        while (first < line.size() && is_space(line[first])) ++first;
        if (first == line.size() || line[first] == '#') continue;

        const auto fields = split_fields(line, line_no);
        if (fields.size() != arity) {
            throw ParseError(line_no, "expected " + std::to_string(arity) + " fields, got " +
                                          std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < arity; ++j) values[j] = parse_number(fields[j], line_no);
        row(line_no, values);
        ++rows;
    }
    return rows;
}

void write_coords(std::ostream& out, std::span<const double> coords) {
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (j) out << ',';
        out << format_double(coords[j]);
    }
}

} // namespace

PointSet parse_points(std::string_view text, std::size_t dims) {
    PointSet points(dims);
    const std::size_t rows = for_each_row(text, dims, [&](std::size_t line_no, const auto& v) {
        try {
            points.push_back(v);
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    });
    if (rows == 0) throw EmptyInput("point file has no data lines");
    return points;
}

std::vector<QueryBox> parse_queries(std::string_view text, std::size_t dims) {
    if (dims == 0) throw DimensionMismatch("dimensionality must be at least 1");
    std::vector<QueryBox> boxes;
    const std::size_t rows = for_each_row(text, 2 * dims, [&](std::size_t, const auto& v) {
        boxes.emplace_back(std::vector<double>(v.begin(), v.begin() + std::ptrdiff_t(dims)),
                           std::vector<double>(v.begin() + std::ptrdiff_t(dims), v.end()));
    });
    if (rows == 0) throw EmptyInput("query file has no data lines");
    return boxes;
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_points(std::ostream& out, const PointSet& points) {
    const auto n = static_cast<PointId>(points.size());
    for (PointId id = 0; id < n; ++id) {
        write_coords(out, points[id].coords);
        out << '\n';
    }
}

void write_queries(std::ostream& out, std::span<const QueryBox> boxes) {
    for (const QueryBox& box : boxes) {
        write_coords(out, box.lo);
        out << ',';
        write_coords(out, box.hi);
        out << '\n';
    }
}

void write_report(std::ostream& out, const PointSet& points,
                  std::span<const std::vector<PointId>> results) {
    for (std::size_t q = 0; q < results.size(); ++q) {
        std::vector<PointId> ids = results[q];
        std::sort(ids.begin(), ids.end());
        out << "q=" << q << " k=" << ids.size() << '\n';
        for (PointId id : ids) {
            out << id << ": ";
            write_coords(out, points[id].coords);
            out << '\n';
        }
    }
}

void write_counts(std::ostream& out, std::span<const std::uint64_t> counts) {
    for (std::size_t q = 0; q < counts.size(); ++q) {
        out << "q=" << q << " k=" << counts[q] << '\n';
    }
}

} // namespace lrt::io
