#pragma once

// Shared helpers for the unit tests: small generators and structure oracles
// that do not go through the code paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lrt/oracle.hpp"
#include "lrt/point.hpp"

namespace lrt::testing {

inline PointSet grid_points(std::uint64_t seed, std::size_t n, std::size_t dims,
                            std::uint64_t side) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.dims = dims;
    cfg.distribution = GeneratorConfig::Distribution::Grid;
    cfg.grid_side = side;
    return gen_points(cfg);
}

inline PointSet uniform_points(std::uint64_t seed, std::size_t n, std::size_t dims) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.dims = dims;
    return gen_points(cfg);
}

inline std::vector<QueryBox> random_boxes(std::uint64_t seed, std::size_t count, std::size_t dims,
                                          std::uint64_t grid_side = 0) {
    BoxConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    cfg.dims = dims;
    cfg.grid_side = grid_side;
    return gen_boxes(cfg);
}

// Ids sorted with std::sort under a comparator written out independently of
// compare_composite: (coord[dim], coord[0..d), id) lexicographic.
inline std::vector<PointId> reference_sorted(const PointSet& points, std::vector<PointId> ids,
                                             std::size_t dim) {
    std::sort(ids.begin(), ids.end(), [&](PointId a, PointId b) {
        std::vector<double> ka{points.coord(a, dim)}, kb{points.coord(b, dim)};
        for (std::size_t j = 0; j < points.dims(); ++j) {
            ka.push_back(points.coord(a, j));
            kb.push_back(points.coord(b, j));
        }
        ka.push_back(a);
        kb.push_back(b);
        return ka < kb;
    });
    return ids;
}

inline std::vector<PointId> all_ids(const PointSet& points) {
    std::vector<PointId> ids(points.size());
    std::iota(ids.begin(), ids.end(), PointId{0});
    return ids;
}

// Integer-valued bounds from lo-0.5 to hi+0.5 in steps of 0.5, so every grid
// coordinate appears both as a closed boundary and strictly between bounds.
inline std::vector<double> half_step_values(std::uint64_t side) {
    std::vector<double> v;
    for (double x = -0.5; x <= static_cast<double>(side) - 0.5; x += 0.5) v.push_back(x);
    return v;
}

} // namespace lrt::testing
