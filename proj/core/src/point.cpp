#include "lrt/point.hpp"

#include <cmath>
#include <string>

#include "lrt/error.hpp"

namespace lrt {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidCoordinate(std::string("non-finite ") + what);
        }
    }
}

} // namespace

PointSet::PointSet(std::size_t dims) : dims_(dims) {
    if (dims == 0) {
        throw DimensionMismatch("point dimensionality must be at least 1");
    }
}

PointSet::PointSet(std::size_t dims, std::vector<double> flat_coords)
    : PointSet(dims) {
    if (flat_coords.size() % dims != 0) {
        throw DimensionMismatch("coordinate count is not a multiple of the dimensionality");
    }
    if (flat_coords.size() / dims >= kPhantom) {
        throw Error("too many points");
    }
    require_finite(flat_coords, "coordinate");
    coords_ = std::move(flat_coords);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw EmptyInput("no points");
    }
    PointSet set(rows.front().size());
    set.reserve(rows.size());
    for (const auto& row : rows) {
        set.push_back(row);
    }
    return set;
}

PointId PointSet::push_back(std::span<const double> coords) {
    if (coords.size() != dims_ || dims_ == 0) {
        throw DimensionMismatch("expected " + std::to_string(dims_) + " coordinates, got " +
                                std::to_string(coords.size()));
    }
    if (size() + 1 >= kPhantom) {
        throw Error("too many points");
    }
    require_finite(coords, "coordinate");
    const auto id = static_cast<PointId>(size());
    coords_.insert(coords_.end(), coords.begin(), coords.end());
    return id;
}

Point PointSet::point(PointId id) const {
    auto view = (*this)[id];
    return {std::vector<double>(view.coords.begin(), view.coords.end()), id};
}

std::strong_ordering compare_composite(PointView a, PointView b, std::size_t dim) noexcept {
    // Coordinates are finite, so operator<=> on doubles never yields unordered.
    if (a.coords[dim] < b.coords[dim]) return std::strong_ordering::less;
    if (a.coords[dim] > b.coords[dim]) return std::strong_ordering::greater;
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        if (a.coords[j] < b.coords[j]) return std::strong_ordering::less;
        if (a.coords[j] > b.coords[j]) return std::strong_ordering::greater;
    }
    return a.id <=> b.id;
}

std::strong_ordering compare_key(const PointSet& points, const SearchKey& key, PointId p,
                                 std::size_t dim) noexcept {
    if (p == kPhantom) {
        return std::strong_ordering::less;
    }
    const double v = points.coord(p, dim);
    if (key.value < v) return std::strong_ordering::less;
    if (key.value > v) return std::strong_ordering::greater;
    switch (key.tie) {
    case SearchKey::Tie::Below:
        return std::strong_ordering::less;
    case SearchKey::Tie::Above:
        return std::strong_ordering::greater;
    case SearchKey::Tie::Exact:
        break;
    }
    return compare_composite(points, key.id, p, dim);
}

QueryBox::QueryBox(std::vector<double> lo_bounds, std::vector<double> hi_bounds)
    : lo(std::move(lo_bounds)), hi(std::move(hi_bounds)) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw DimensionMismatch("query box bounds must have the same nonzero length");
    }
    require_finite(lo, "query bound");
    require_finite(hi, "query bound");
}

bool QueryBox::is_empty() const noexcept {
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (lo[j] > hi[j]) return true;
    }
    return false;
}

bool box_contains(const QueryBox& box, PointView p) noexcept {
    for (std::size_t j = 0; j < box.lo.size(); ++j) {
        if (!(box.lo[j] <= p.coords[j] && p.coords[j] <= box.hi[j])) return false;
    }
    return true;
}

} // namespace lrt
