#pragma once

#include <cmath>
#include <random>

#include "pipeflow/core.hpp"
#include "pipeflow/scenarios.hpp"

namespace testing_support {

inline constexpr double kG = 9.81;
inline constexpr double kWaveSpeed = 1086.6;

inline double rel_diff(double a, double b, double scale) { return std::abs(a - b) / scale; }

// Water-hammer penstock geometry: 2000 m, 2 m^2, 5 deg down from 250 m.
inline pipeflow::PipeGeometry penstock() {
    pipeflow::Altitude alt;
    alt.upstream_m = 250.0;
    alt.slope_deg = 5.0;
    return pipeflow::PipeGeometry::circular(2000.0, 2.0, 0.2, 23.0e9, alt);
}

inline pipeflow::PipeGeometry flat_pipe(double length = 2000.0) {
    return pipeflow::PipeGeometry::circular(length, 2.0, 0.2, 23.0e9, pipeflow::Altitude{});
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    // Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
};

}  // namespace testing_support
