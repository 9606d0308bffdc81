#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrt/point.hpp"

namespace lrt::io {

// Point file: one point per line, `dims` numbers separated by commas and/or
// whitespace. Blank lines and lines starting with '#' are skipped. LF or CRLF.
// Ids are assigned in file order. Throws ParseError (1-based line) on bad
// arity, non-numeric or non-finite fields, and EmptyInput without data lines.
PointSet parse_points(std::string_view text, std::size_t dims);

// Query file: 2*dims numbers per line, lo_1..lo_d then hi_1..hi_d.
std::vector<QueryBox> parse_queries(std::string_view text, std::size_t dims);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

void write_points(std::ostream& out, const PointSet& points);
void write_queries(std::ostream& out, std::span<const QueryBox> boxes);

// "q=<i> k=<k>" per query followed by "<id>: c_1,...,c_d" per hit.
void write_report(std::ostream& out, const PointSet& points,
                  std::span<const std::vector<PointId>> results);

// Header lines only.
void write_counts(std::ostream& out, std::span<const std::uint64_t> counts);

} // namespace lrt::io
