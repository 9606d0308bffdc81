#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lrt/point.hpp"

namespace lrt {

// Linear scan; ids ascending. Throws DimensionMismatch.
std::vector<PointId> brute_force_query(const PointSet& points, const QueryBox& box);

// splitmix64 step: returns {new state, output}.
constexpr std::pair<std::uint64_t, std::uint64_t> splitmix64_next(std::uint64_t state) noexcept {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return {state, z ^ (z >> 31)};
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        auto [s, out] = splitmix64_next(state_);
        state_ = s;
        return out;
    }
    // output / 2^64, rounded to nearest and kept strictly below 1.
    double next_unit() noexcept;
    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

double unit_from_bits(std::uint64_t bits) noexcept;

struct GeneratorConfig {
    enum class Distribution { Uniform, Grid };

    std::uint64_t seed = 0;
    std::size_t n = 1;
    std::size_t dims = 1;
    Distribution distribution = Distribution::Uniform;
    std::uint64_t grid_side = 1; // used by Grid: coordinates are output mod g
};

// Coordinates are drawn point by point, dimension by dimension, from one
// splitmix64 stream seeded with cfg.seed. Throws std::invalid_argument on a
// config with n, dims or grid_side equal to zero.
PointSet gen_points(const GeneratorConfig& cfg);

// Boxes for tests and benchmarks, drawn from their own splitmix64 stream.
struct BoxConfig {
    enum class Shape {
        RandomCorners, // per dimension, two draws sorted into [lo, hi]
        Selectivity,   // per dimension a side of f^(1/d), placed uniformly in [0,1)
    };

    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::size_t dims = 1;
    Shape shape = Shape::RandomCorners;
    // RandomCorners: 0 draws from [0,1); g > 0 draws integers in [0,g).
    std::uint64_t grid_side = 0;
    double selectivity = 1e-3;
};

std::vector<QueryBox> gen_boxes(const BoxConfig& cfg);

} // namespace lrt
