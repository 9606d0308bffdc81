#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lrt {

using PointId = std::uint32_t;

// Marks a padding leaf (or padding array entry). Orders after every real key.
inline constexpr PointId kPhantom = std::numeric_limits<PointId>::max();

struct Point {
    std::vector<double> coords;
    PointId id = 0;
};

struct PointView {
    std::span<const double> coords;
    PointId id = 0;

    std::size_t dims() const noexcept { return coords.size(); }
    double operator[](std::size_t j) const { return coords[j]; }
};

// A set of d-dimensional points stored row-major. Ids are positions: the
// i-th pushed point gets id i. Coordinates must be finite.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dims);
    PointSet(std::size_t dims, std::vector<double> flat_coords);

    // Dimensionality is taken from the first row; throws EmptyInput for no
    // rows and DimensionMismatch for ragged rows.
    static PointSet from_rows(const std::vector<std::vector<double>>& rows);

    PointId push_back(std::span<const double> coords);
    void reserve(std::size_t n) { coords_.reserve(n * dims_); }

    std::size_t size() const noexcept { return dims_ == 0 ? 0 : coords_.size() / dims_; }
    bool empty() const noexcept { return coords_.empty(); }
    std::size_t dims() const noexcept { return dims_; }

    PointView operator[](PointId id) const noexcept {
        return {std::span<const double>(coords_.data() + std::size_t(id) * dims_, dims_), id};
    }
    double coord(PointId id, std::size_t dim) const noexcept {
        return coords_[std::size_t(id) * dims_ + dim];
    }
    std::span<const double> flat() const noexcept { return coords_; }

    Point point(PointId id) const;

private:
    std::size_t dims_ = 0;
    std::vector<double> coords_;
};

// Total order on points keyed by coordinate `dim`, ties broken by the full
// coordinate tuple and then the id. Equal only for the same point.
std::strong_ordering compare_composite(PointView a, PointView b, std::size_t dim) noexcept;

inline std::strong_ordering compare_composite(const PointSet& points, PointId a, PointId b,
                                              std::size_t dim) noexcept {
    return compare_composite(points[a], points[b], dim);
}

struct CompositeLess {
    const PointSet* points;
    std::size_t dim;

    bool operator()(PointId a, PointId b) const noexcept {
        return compare_composite(*points, a, b, dim) < 0;
    }
};

// A probe into a composite-ordered sequence: either the exact key of a stored
// point, or a raw coordinate value that sorts below (resp. above) every point
// sharing that value.
struct SearchKey {
    enum class Tie : std::uint8_t { Below, Exact, Above };

    double value = 0.0;
    Tie tie = Tie::Below;
    PointId id = 0;

    static SearchKey below(double v) noexcept { return {v, Tie::Below, 0}; }
    static SearchKey above(double v) noexcept { return {v, Tie::Above, 0}; }
    static SearchKey exact(const PointSet& points, PointId id, std::size_t dim) noexcept {
        return {points.coord(id, dim), Tie::Exact, id};
    }
};

// Compares a search key against stored point `p` (which may be kPhantom).
std::strong_ordering compare_key(const PointSet& points, const SearchKey& key, PointId p,
                                 std::size_t dim) noexcept;

inline bool key_le(const PointSet& points, const SearchKey& key, PointId p,
                   std::size_t dim) noexcept {
    return compare_key(points, key, p, dim) <= 0;
}

// Closed box [lo_j, hi_j] per dimension. lo_j > hi_j is an empty interval.
struct QueryBox {
    std::vector<double> lo;
    std::vector<double> hi;

    QueryBox() = default;
    // Throws DimensionMismatch if the sizes differ and InvalidCoordinate on
    // non-finite bounds.
    QueryBox(std::vector<double> lo_bounds, std::vector<double> hi_bounds);

    std::size_t dims() const noexcept { return lo.size(); }
    bool is_empty() const noexcept;
};

bool box_contains(const QueryBox& box, PointView p) noexcept;

} // namespace lrt
