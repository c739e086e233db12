#pragma once
// Method-of-characteristics solver for the linear water-hammer equations
//   dH/dt + a^2/(g S) dQ/dx = 0,   dQ/dt + g S dH/dx = -g S Sf
// on a fixed grid at unit Courant number (dt = dx / a).

#include <cstddef>
#include <vector>

#include "pipeflow/core.hpp"
#include "pipeflow/scenarios.hpp"

namespace pipeflow {

struct MocState {
    std::vector<double> head_H;
    std::vector<double> discharge_Q;
    double wave_speed_a = 0.0;
    double node_spacing = 0.0;
    double time_t = 0.0;

    MocState() = default;
    MocState(std::vector<double> head, std::vector<double> discharge, double wave_speed,
             double spacing, double t = 0.0);

    [[nodiscard]] std::size_t size() const { return head_H.size(); }
    [[nodiscard]] double dt() const { return node_spacing / wave_speed_a; }
    void validate() const;
};

// Throws std::invalid_argument for unsupported boundary kinds (periodic).
MocState moc_step(const MocState& state, double g, double section_S,
                  const PipeGeometry& geometry, const FrictionParams& friction,
                  const BoundaryCondition& upstream, const BoundaryCondition& downstream);

struct MocFrame {
    double t = 0.0;
    std::vector<double> head_H;
    std::vector<double> discharge_Q;
};

struct MocSeries {
    std::vector<double> node_x;
    std::vector<MocFrame> frames;
};

// Initial state: scenario steady state evaluated at the nodes and converted
// to piezometric head.
MocState moc_initial_state(const Scenario& scenario, std::size_t node_count);

// Records frames every `stride` steps (stride 0 or 1: every step) plus the
// final frame.
MocSeries moc_run(const Scenario& scenario, std::size_t node_count, std::size_t stride = 1);

}  // namespace pipeflow
