#include "lrt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lrt/error.hpp"

namespace lrt {

std::vector<PointId> brute_force_query(const PointSet& points, const QueryBox& box) {
    if (box.dims() != points.dims()) {
        throw DimensionMismatch("query box has " + std::to_string(box.dims()) +
                                " dimensions, points have " + std::to_string(points.dims()));
    }
    std::vector<PointId> out;
    const auto n = static_cast<PointId>(points.size());
    for (PointId id = 0; id < n; ++id) {
        if (box_contains(box, points[id])) out.push_back(id);
    }
    return out;
}

double unit_from_bits(std::uint64_t bits) noexcept {
    // The conversion rounds to nearest, so the top 2^10 outputs would land on
    // 1.0 exactly; those map to the largest double below one.
    const double u = static_cast<double>(bits) * 0x1p-64;
    return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double SplitMix64::next_unit() noexcept { return unit_from_bits(next()); }

PointSet gen_points(const GeneratorConfig& cfg) {
    if (cfg.n == 0 || cfg.dims == 0) {
        throw std::invalid_argument("generator needs n >= 1 and dims >= 1");
    }
    if (cfg.distribution == GeneratorConfig::Distribution::Grid && cfg.grid_side == 0) {
        throw std::invalid_argument("grid side must be >= 1");
    }
    SplitMix64 rng(cfg.seed);
    std::vector<double> coords(cfg.n * cfg.dims);
    for (double& c : coords) {
        if (cfg.distribution == GeneratorConfig::Distribution::Uniform) {
            c = rng.next_unit();
        } else {
            c = static_cast<double>(rng.next() % cfg.grid_side);
        }
    }
    return PointSet(cfg.dims, std::move(coords));
}

std::vector<QueryBox> gen_boxes(const BoxConfig& cfg) {
    if (cfg.dims == 0) {
        throw std::invalid_argument("boxes need dims >= 1");
    }
    SplitMix64 rng(cfg.seed);
    std::vector<QueryBox> boxes;
    boxes.reserve(cfg.count);

    const double side = std::pow(cfg.selectivity, 1.0 / static_cast<double>(cfg.dims));
    for (std::size_t q = 0; q < cfg.count; ++q) {
        std::vector<double> lo(cfg.dims), hi(cfg.dims);
        for (std::size_t j = 0; j < cfg.dims; ++j) {
            if (cfg.shape == BoxConfig::Shape::Selectivity) {
                lo[j] = rng.next_unit() * (1.0 - side);
                hi[j] = lo[j] + side;
                continue;
            }
            double a, b;
            if (cfg.grid_side > 0) {
                a = static_cast<double>(rng.next() % cfg.grid_side);
                b = static_cast<double>(rng.next() % cfg.grid_side);
            } else {
                a = rng.next_unit();
                b = rng.next_unit();
            }
            lo[j] = std::min(a, b);
            hi[j] = std::max(a, b);
        }
        boxes.emplace_back(std::move(lo), std::move(hi));
    }
    return boxes;
}

} // namespace lrt
