#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrt/point.hpp"

namespace lrt::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIoError = 2,
    kMismatch = 3,
};

// Entry point shared by the `lrt` binary and the tests. args[0] is the
// program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// First query whose result disagrees with the brute-force oracle.
struct Mismatch {
    std::size_t query = 0;
    std::vector<PointId> missing;    // oracle hits absent from the result
    std::vector<PointId> unexpected; // result hits the oracle rejects
};

std::optional<Mismatch> check_results(const PointSet& points, std::span<const QueryBox> boxes,
                                      std::span<const std::vector<PointId>> results);

// Count-only variant; the symmetric difference is left empty.
std::optional<Mismatch> check_counts(const PointSet& points, std::span<const QueryBox> boxes,
                                     std::span<const std::uint64_t> counts);

void write_mismatch(std::ostream& err, const Mismatch& m);

} // namespace lrt::cli
