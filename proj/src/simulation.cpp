#include "pipeflow/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "format.hpp"

namespace pipeflow {

namespace {

using Clock = std::chrono::steady_clock;

FieldRow kinetic_row(double coord, double A, double Q, double z, const Scenario& sc) {
    const auto& geo = sc.geometry;
    return {coord,
            A,
            Q,
            Q / A,
            A / geo.section_S,
            piezometric_head(A, geo.section_S, z, geo.diameter_delta, sc.constants.c,
                             sc.constants.g)};
}

FieldRow lerp(const FieldRow& a, const FieldRow& b, double w, double coord) {
    const auto mix = [w](double p, double q) { return p + w * (q - p); };
    return {coord,
            mix(a.area, b.area),
            mix(a.discharge, b.discharge),
            mix(a.velocity, b.velocity),
            mix(a.rho_ratio, b.rho_ratio),
            mix(a.piezo, b.piezo)};
}

// Index of the last cell centre <= x, clamped to [0, n - 2].
std::size_t bracket(std::span<const double> coords, double x) {
    const auto it = std::upper_bound(coords.begin(), coords.end(), x);
    const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - coords.begin() - 1, 0));
    return std::min(k, coords.size() - 2);
}

FieldRow probe_kinetic(const State& state, const Mesh& mesh, const Scenario& sc, double x) {
    const std::size_t n = mesh.size();
    const auto row = [&](std::size_t i) {
        return kinetic_row(mesh.centers[i], state.area_A[i], state.discharge_Q[i],
                           mesh.z_cells[i], sc);
    };
    FieldRow out;
    if (x <= mesh.centers.front()) {
        out = row(0);
    } else if (x >= mesh.centers.back()) {
        out = row(n - 1);
    } else {
        const std::size_t k = bracket(mesh.centers, x);
        const double w = (x - mesh.centers[k]) / (mesh.centers[k + 1] - mesh.centers[k]);
        out = lerp(row(k), row(k + 1), w, x);
    }
    out.coord = state.time_t;
    return out;
}

void track_extrema(RunStats& stats, std::span<const double> areas) {
    const auto [lo, hi] = std::minmax_element(areas.begin(), areas.end());
    stats.min_area = std::min(stats.min_area, *lo);
    stats.max_area = std::max(stats.max_area, *hi);
}

bool snapshot_due(std::size_t step, std::size_t stride, bool last) {
    return last || (stride != 0 && step % stride == 0);
}

}  // namespace

State initial_state(const Scenario& scenario, const Mesh& mesh) {
    if (std::holds_alternative<ReservoirHead>(scenario.upstream)) {
        return steady_state_init(scenario, mesh);
    }
    State state = still_water_state(mesh, scenario.geometry.section_S, scenario.constants.c,
                                    scenario.constants.g);
    std::fill(state.discharge_Q.begin(), state.discharge_Q.end(), scenario.initial_discharge_Q0);
    return state;
}

FieldRow sample_field(std::span<const FieldRow> cells, double x) {
    if (cells.empty()) throw std::invalid_argument("sample_field: empty field");
    if (cells.size() == 1 || x <= cells.front().coord) return cells.front();
    if (x >= cells.back().coord) return cells.back();
    std::vector<double> coords(cells.size());
    std::transform(cells.begin(), cells.end(), coords.begin(),
                   [](const FieldRow& r) { return r.coord; });
    const std::size_t k = bracket(coords, x);
    const double w = (x - coords[k]) / (coords[k + 1] - coords[k]);
    return lerp(cells[k], cells[k + 1], w, x);
}

std::vector<FieldRow> kinetic_field(const State& state, const Mesh& mesh,
                                    const Scenario& scenario) {
    std::vector<FieldRow> rows(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        rows[i] = kinetic_row(mesh.centers[i], state.area_A[i], state.discharge_Q[i],
                              mesh.z_cells[i], scenario);
    }
    return rows;
}

std::vector<FieldRow> moc_field(const MocFrame& frame, std::span<const double> node_x,
                                const Scenario& scenario) {
    const auto& geo = scenario.geometry;
    const double c = scenario.constants.c;
    const double g = scenario.constants.g;
    std::vector<FieldRow> rows(node_x.size());
    for (std::size_t j = 0; j < node_x.size(); ++j) {
        const double z = geo.altitude.at(node_x[j]);
        const double H = frame.head_H[j];
        const double A = area_from_piezometric_head(H, geo.section_S, z, geo.diameter_delta, c, g);
        const double Q = frame.discharge_Q[j];
        rows[j] = {node_x[j], A, Q, Q / A, A / geo.section_S, H};
    }
    return rows;
}

SolverOutput simulate_kinetic(const RunConfig& config) {
    const auto started = Clock::now();
    const Scenario& sc = config.scenario;
    const Mesh mesh = sc.make_mesh();
    const KineticParams params = config.kinetic_params();
    const KineticSolver solver(mesh, sc.constants, sc.geometry, sc.friction, params);
    const BoundaryProvider boundary = make_boundary(mesh, sc.geometry, sc.upstream, sc.downstream,
                                                    sc.constants.c, sc.constants.g);

    SolverOutput out;
    out.solver = "kinetic";
    out.stats.cells = mesh.size();
    out.stats.kernel = std::string(to_string(params.kernel));
    out.stats.min_area = std::numeric_limits<double>::infinity();
    out.stats.max_area = 0.0;
    for (double x : sc.probes) out.probes.push_back({x, {}});

    const auto record = [&](const State& state, std::size_t step, bool last) {
        for (auto& probe : out.probes) probe.rows.push_back(probe_kinetic(state, mesh, sc, probe.x));
        track_extrema(out.stats, state.area_A);
        if (snapshot_due(step, sc.output_stride, last) || step == 0) {
            out.snapshots.push_back({state.time_t, step, kinetic_field(state, mesh, sc)});
        }
    };

    const State initial = initial_state(sc, mesh);
    record(initial, 0, sc.t_end <= 0.0);
    const State final_state =
        solver.run(initial, boundary, sc.t_end, [&](const State& s, double, std::size_t step) {
            record(s, step, s.time_t >= sc.t_end);
            out.stats.steps = step;
        });
    out.stats.final_mass = total_mass(final_state, mesh);
    out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
}

SolverOutput simulate_moc(const RunConfig& config) {
    const auto started = Clock::now();
    const Scenario& sc = config.scenario;
    const std::size_t nodes = config.moc_node_count();
    MocState state = moc_initial_state(sc, nodes);
    std::vector<double> node_x(nodes);
    for (std::size_t j = 0; j < nodes; ++j) node_x[j] = static_cast<double>(j) * state.node_spacing;

    SolverOutput out;
    out.solver = "moc";
    out.stats.cells = nodes;
    out.stats.min_area = std::numeric_limits<double>::infinity();
    out.stats.max_area = 0.0;
    for (double x : sc.probes) out.probes.push_back({x, {}});

    std::vector<double> areas(nodes);
    const auto record = [&](std::size_t step, bool last) {
        const MocFrame frame{state.time_t, state.head_H, state.discharge_Q};
        const auto field = moc_field(frame, node_x, sc);
        for (auto& probe : out.probes) {
            FieldRow row = sample_field(field, probe.x);
            row.coord = state.time_t;
            probe.rows.push_back(row);
        }
        for (std::size_t j = 0; j < nodes; ++j) areas[j] = field[j].area;
        track_extrema(out.stats, areas);
        if (snapshot_due(step, sc.output_stride, last) || step == 0) {
            out.snapshots.push_back({state.time_t, step, field});
        }
    };

    const std::size_t steps =
        sc.t_end <= 0.0 ? 0
                        : static_cast<std::size_t>(std::ceil(sc.t_end / state.dt() - 1e-9));
    record(0, steps == 0);
    for (std::size_t k = 1; k <= steps; ++k) {
        state = moc_step(state, sc.constants.g, sc.geometry.section_S, sc.geometry, sc.friction,
                         sc.upstream, sc.downstream);
        state.time_t = static_cast<double>(k) * state.dt();
        record(k, k == steps);
    }
    out.stats.steps = steps;
    // Trapezoidal mass on the nodes.
    double mass = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double w = (j == 0 || j + 1 == nodes) ? 0.5 : 1.0;
        mass += w * state.node_spacing * areas[j];
    }
    out.stats.final_mass = mass;
    out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
}

std::string format_rows(std::string_view header, std::span<const FieldRow> rows) {
    using detail::format_number;
    std::string text(header);
    text += '\n';
    for (const auto& r : rows) {
        text += format_number(r.coord);
        for (double v : {r.area, r.discharge, r.velocity, r.rho_ratio, r.piezo}) {
            text += ',';
            text += format_number(v);
        }
        text += '\n';
    }
    return text;
}

std::string format_summary(const SolverOutput& output) {
    using detail::format_number;
    std::ostringstream s;
    s << "solver = " << output.solver << '\n';
    s << (output.solver == "moc" ? "nodes = " : "cells = ") << output.stats.cells << '\n';
    s << "steps = " << output.stats.steps << '\n';
    s << "wall_seconds = " << format_number(output.stats.wall_seconds) << '\n';
    s << "min_area_m2 = " << format_number(output.stats.min_area) << '\n';
    s << "max_area_m2 = " << format_number(output.stats.max_area) << '\n';
    s << "final_mass_m3 = " << format_number(output.stats.final_mass) << '\n';
    if (!output.stats.kernel.empty()) s << "kernel = " << output.stats.kernel << '\n';
    s << "snapshots = " << output.snapshots.size() << '\n';
    return s.str();
}

std::vector<std::filesystem::path> write_output(const SolverOutput& output,
                                                const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto put = [&](const std::string& name, const std::string& text) {
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
        f << text;
        if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
        written.push_back(path);
    };
    char name[96];
    for (std::size_t k = 0; k < output.probes.size(); ++k) {
        std::snprintf(name, sizeof name, "%s_probe_%zu.csv", output.solver.c_str(), k);
        put(name, format_rows(kProbeHeader, output.probes[k].rows));
    }
    for (std::size_t k = 0; k < output.snapshots.size(); ++k) {
        std::snprintf(name, sizeof name, "%s_snapshot_%05zu.csv", output.solver.c_str(), k);
        put(name, format_rows(kSnapshotHeader, output.snapshots[k].rows));
    }
    put(output.solver + "_summary.txt", format_summary(output));
    return written;
}

std::vector<SolverOutput> run_simulation(const RunConfig& config) {
    config.validate();
    std::vector<SolverOutput> outputs;
    if (config.solver != SolverKind::moc) outputs.push_back(simulate_kinetic(config));
    if (config.solver != SolverKind::kinetic) outputs.push_back(simulate_moc(config));
    for (const auto& out : outputs) write_output(out, config.output_dir);
    return outputs;
}

}  // namespace pipeflow
