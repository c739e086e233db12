#pragma once
// Boundary laws, steady initial states and the water-hammer scenario.

#include <string_view>
#include <variant>
#include <vector>

#include "pipeflow/core.hpp"
#include "pipeflow/kinetic.hpp"

namespace pipeflow {

enum class ClosureKind { linear, cosine, instantaneous, constant };

std::string_view to_string(ClosureKind kind);
ClosureKind parse_closure_kind(std::string_view name);

// Discharge law at a valve: q0 at t = 0, reaching 0 at t_close (except
// `constant`, which holds q0 forever).
struct ClosureLaw {
    ClosureKind kind = ClosureKind::linear;
    double q0 = 0.0;
    double t_close = 5.0;

    [[nodiscard]] double operator()(double t) const;
    bool operator==(const ClosureLaw&) const = default;
};

double valve_closure_law(double t, double q0, double t_close);

struct ReservoirHead {
    double head_m = 0.0;
    bool operator==(const ReservoirHead&) const = default;
};
struct PrescribedDischarge {
    ClosureLaw law;
    bool operator==(const PrescribedDischarge&) const = default;
};
struct Wall {
    bool operator==(const Wall&) const = default;
};
struct Periodic {
    bool operator==(const Periodic&) const = default;
};

using BoundaryCondition = std::variant<ReservoirHead, PrescribedDischarge, Wall, Periodic>;

enum class Side { upstream, downstream };

std::string_view boundary_kind(const BoundaryCondition& bc);

// How the scheme's c is chosen.
enum class WaveSpeedMode { elastic, rigid, explicit_value };

struct Scenario {
    PipeGeometry geometry;
    PhysicalConstants constants;
    WaveSpeedMode wave_speed_mode = WaveSpeedMode::elastic;
    FrictionParams friction;
    std::size_t mesh_cells = 1000;
    BoundaryCondition upstream = ReservoirHead{300.0};
    BoundaryCondition downstream = PrescribedDischarge{};
    double initial_discharge_Q0 = 0.0;
    double t_end = 0.0;
    std::size_t output_stride = 0;  // steps between snapshots; 0: first and last only
    std::vector<double> probes;

    // Validates invariants; throws std::invalid_argument naming the field.
    void validate() const;
    [[nodiscard]] Mesh make_mesh() const;
    [[nodiscard]] Mesh make_mesh(std::size_t cells) const;
    bool operator==(const Scenario&) const = default;
};

// Resolve c from the wave speed mode (explicit values are kept).
double resolve_wave_speed(WaveSpeedMode mode, const PipeGeometry& geometry, double beta,
                          double rho0, double explicit_c);

// The pipe-flow setup used for validation: 2000 m concrete pipe, 2 m^2
// circular section, 5 deg descending slope from 250 m, 300 m reservoir head,
// 10 m^3/s cut linearly in 5 s.
Scenario water_hammer_scenario();

// Frictionless smooth steady state Q = Q0 with constant total head fixed by
// the upstream reservoir. Throws std::runtime_error when the per-cell
// fixed-point iteration fails.
State steady_state_init(const Scenario& scenario, const Mesh& mesh);

// Areas of the still-water state through `area_at_first` in cell 0.
State still_water_state(const Mesh& mesh, double area_at_first, double c, double g);

GhostPair ghost_states(const State& state, const Mesh& mesh, const PipeGeometry& geometry,
                       const BoundaryCondition& upstream, const BoundaryCondition& downstream,
                       double t, double c, double g);

BoundaryProvider make_boundary(const Mesh& mesh, const PipeGeometry& geometry,
                               const BoundaryCondition& upstream,
                               const BoundaryCondition& downstream, double c, double g);

}  // namespace pipeflow
