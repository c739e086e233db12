#include "pipeflow/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pipeflow {

std::string_view to_string(ClosureKind kind) {
    switch (kind) {
        case ClosureKind::linear: return "linear";
        case ClosureKind::cosine: return "cosine";
        case ClosureKind::instantaneous: return "instantaneous";
        case ClosureKind::constant: return "constant";
    }
    return "linear";
}

ClosureKind parse_closure_kind(std::string_view name) {
    if (name == "linear") return ClosureKind::linear;
    if (name == "cosine") return ClosureKind::cosine;
    if (name == "instantaneous") return ClosureKind::instantaneous;
    if (name == "constant") return ClosureKind::constant;
    throw std::invalid_argument("unknown closure law '" + std::string(name) + "'");
}

double valve_closure_law(double t, double q0, double t_close) {
    if (!(t_close > 0.0)) throw std::domain_error("valve closure time must be positive");
    if (t >= t_close) return 0.0;
    return q0 * (1.0 - t / t_close);
}

double ClosureLaw::operator()(double t) const {
    switch (kind) {
        case ClosureKind::linear: return valve_closure_law(t, q0, t_close);
        case ClosureKind::cosine:
            if (t >= t_close) return 0.0;
            return q0 * 0.5 * (1.0 + std::cos(kPi * t / t_close));
        case ClosureKind::instantaneous: return t > 0.0 ? 0.0 : q0;
        case ClosureKind::constant: return q0;
    }
    return q0;
}

std::string_view boundary_kind(const BoundaryCondition& bc) {
    struct Visitor {
        std::string_view operator()(const ReservoirHead&) const { return "reservoir"; }
        std::string_view operator()(const PrescribedDischarge&) const { return "valve"; }
        std::string_view operator()(const Wall&) const { return "wall"; }
        std::string_view operator()(const Periodic&) const { return "periodic"; }
    };
    return std::visit(Visitor{}, bc);
}

double resolve_wave_speed(WaveSpeedMode mode, const PipeGeometry& geometry, double beta,
                          double rho0, double explicit_c) {
    switch (mode) {
        case WaveSpeedMode::rigid: return sound_speed(beta, rho0);
        case WaveSpeedMode::elastic:
            return effective_wave_speed(sound_speed(beta, rho0), geometry.diameter_delta,
                                        geometry.wall_e, geometry.young_E, beta);
        case WaveSpeedMode::explicit_value: return explicit_c;
    }
    return explicit_c;
}

void Scenario::validate() const {
    geometry.validate();
    constants.validate();
    friction.validate();
    if (mesh_cells < 2) throw std::invalid_argument("mesh.cells: need at least 2 cells");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("time.end_s: must be a non-negative finite time");
    }
    for (double x : probes) {
        if (!(x >= 0.0 && x <= geometry.length_L)) {
            throw std::invalid_argument("output.probes_m: probe " + std::to_string(x) +
                                        " lies outside [0, L]");
        }
    }
    const bool up_periodic = std::holds_alternative<Periodic>(upstream);
    const bool down_periodic = std::holds_alternative<Periodic>(downstream);
    if (up_periodic != down_periodic) {
        throw std::invalid_argument("boundary: periodic must be set on both sides or neither");
    }
    const auto check_head = [&](const BoundaryCondition& bc, double x, const char* key) {
        if (const auto* r = std::get_if<ReservoirHead>(&bc)) {
            const double crown = geometry.altitude.at(x) + geometry.diameter_delta;
            if (!(r->head_m > crown)) {
                throw std::invalid_argument(std::string(key) +
                                            ": reservoir head must exceed the pipe crown " +
                                            std::to_string(crown) + " m");
            }
        }
        if (const auto* p = std::get_if<PrescribedDischarge>(&bc)) {
            if (!(p->law.t_close > 0.0)) {
                throw std::invalid_argument(std::string(key) + ": closure time must be positive");
            }
        }
    };
    check_head(upstream, 0.0, "boundary.upstream");
    check_head(downstream, geometry.length_L, "boundary.downstream");
}

Mesh Scenario::make_mesh() const { return make_mesh(mesh_cells); }

Mesh Scenario::make_mesh(std::size_t cells) const {
    return Mesh::uniform(geometry.length_L, cells, geometry.altitude);
}

Scenario water_hammer_scenario() {
    Scenario sc;
    Altitude altitude;
    altitude.upstream_m = 250.0;
    altitude.slope_deg = 5.0;
    sc.geometry = PipeGeometry::circular(2000.0, 2.0, 0.20, 23.0e9, altitude);
    sc.wave_speed_mode = WaveSpeedMode::elastic;
    const double beta = 5.0e-10;
    const double rho0 = 1000.0;
    sc.constants = PhysicalConstants::make(
        9.81, beta, rho0, resolve_wave_speed(sc.wave_speed_mode, sc.geometry, beta, rho0, 0.0));
    sc.mesh_cells = 1000;
    sc.upstream = ReservoirHead{300.0};
    sc.downstream = PrescribedDischarge{ClosureLaw{ClosureKind::linear, 10.0, 5.0}};
    sc.initial_discharge_Q0 = 10.0;
    sc.t_end = 60.0;
    sc.output_stride = 0;
    sc.probes = {1000.0};
    return sc;
}

State steady_state_init(const Scenario& scenario, const Mesh& mesh) {
    const auto* reservoir = std::get_if<ReservoirHead>(&scenario.upstream);
    if (reservoir == nullptr) {
        throw std::invalid_argument("steady_state_init: needs an upstream reservoir");
    }
    const double c = scenario.constants.c;
    const double g = scenario.constants.g;
    const double c2 = c * c;
    const double q0 = scenario.initial_discharge_Q0;
    const auto& geo = scenario.geometry;

    const double inlet = area_from_piezometric_head(reservoir->head_m, geo.section_S,
                                                    mesh.z_cells.front(), geo.diameter_delta, c, g);
    const double u_in = q0 / inlet;
    const double head = 0.5 * u_in * u_in + g * mesh.z_cells.front() + c2 * std::log(inlet);

    State state;
    state.area_A.resize(mesh.size());
    state.discharge_Q.assign(mesh.size(), q0);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        double a = geo.section_S;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const double u = q0 / a;
            const double next = std::exp((head - g * mesh.z_cells[i] - 0.5 * u * u) / c2);
            if (!(next > 0.0) || !std::isfinite(next)) {
                throw std::runtime_error("steady_state_init: area left the positive range in cell " +
                                         std::to_string(i));
            }
            const bool done = std::abs(next - a) <= 1e-12 * next;
            a = next;
            if (done) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::runtime_error("steady_state_init: no convergence in cell " +
                                     std::to_string(i));
        }
        state.area_A[i] = a;
    }
    return state;
}

State still_water_state(const Mesh& mesh, double area_at_first, double c, double g) {
    State state(mesh.size(), area_at_first, 0.0);
    const double z0 = mesh.z_cells.front();
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        state.area_A[i] = area_at_first * std::exp(-g * (mesh.z_cells[i] - z0) / (c * c));
    }
    return state;
}

namespace {

CellState ghost_for(const BoundaryCondition& bc, const State& state, const Mesh& mesh,
                    const PipeGeometry& geometry, Side side, double t, double c, double g) {
    const std::size_t n = state.size();
    const std::size_t adj = side == Side::upstream ? 0 : n - 1;
    const std::size_t opposite = side == Side::upstream ? n - 1 : 0;
    const CellState inner{state.area_A[adj], state.discharge_Q[adj]};

    if (const auto* r = std::get_if<ReservoirHead>(&bc)) {
        const double area = area_from_piezometric_head(r->head_m, geometry.section_S,
                                                       mesh.z_cells[adj],
                                                       geometry.diameter_delta, c, g);
        return {area, inner.discharge / inner.area * area};
    }
    if (const auto* p = std::get_if<PrescribedDischarge>(&bc)) {
        return {inner.area, p->law(t)};
    }
    if (std::holds_alternative<Wall>(bc)) {
        return {inner.area, 0.0 - inner.discharge};
    }
    return {state.area_A[opposite], state.discharge_Q[opposite]};
}

}  // namespace

GhostPair ghost_states(const State& state, const Mesh& mesh, const PipeGeometry& geometry,
                       const BoundaryCondition& upstream, const BoundaryCondition& downstream,
                       double t, double c, double g) {
    if (state.size() == 0) throw std::invalid_argument("ghost_states: empty state");
    return {ghost_for(upstream, state, mesh, geometry, Side::upstream, t, c, g),
            ghost_for(downstream, state, mesh, geometry, Side::downstream, t, c, g)};
}

BoundaryProvider make_boundary(const Mesh& mesh, const PipeGeometry& geometry,
                               const BoundaryCondition& upstream,
                               const BoundaryCondition& downstream, double c, double g) {
    return [mesh, geometry, upstream, downstream, c, g](const State& state) {
        return ghost_states(state, mesh, geometry, upstream, downstream, state.time_t, c, g);
    };
}

}  // namespace pipeflow
