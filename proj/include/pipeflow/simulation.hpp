#pragma once
// Drives the kinetic and MOC solvers from a RunConfig and writes CSV output.
//
// Probe files:    t_s,A_m2,Q_m3s,u_ms,rho_ratio,piezo_m   (one row per step)
// Snapshot files: x_m,A_m2,Q_m3s,u_ms,rho_ratio,piezo_m   (one file per frame)

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pipeflow/config.hpp"
#include "pipeflow/moc.hpp"

namespace pipeflow {

inline constexpr std::string_view kProbeHeader = "t_s,A_m2,Q_m3s,u_ms,rho_ratio,piezo_m";
inline constexpr std::string_view kSnapshotHeader = "x_m,A_m2,Q_m3s,u_ms,rho_ratio,piezo_m";

struct FieldRow {
    double coord = 0.0;  // t for probes, x for snapshots
    double area = 0.0;
    double discharge = 0.0;
    double velocity = 0.0;
    double rho_ratio = 0.0;
    double piezo = 0.0;
};

struct ProbeSeries {
    double x = 0.0;
    std::vector<FieldRow> rows;
};

struct Snapshot {
    double t = 0.0;
    std::size_t step = 0;
    std::vector<FieldRow> rows;
};

struct RunStats {
    std::size_t cells = 0;  // cells (kinetic) or nodes (MOC)
    std::size_t steps = 0;
    double wall_seconds = 0.0;
    double min_area = 0.0;
    double max_area = 0.0;
    double final_mass = 0.0;
    std::string kernel;  // empty for MOC
};

struct SolverOutput {
    std::string solver;  // "kinetic" or "moc"
    std::vector<ProbeSeries> probes;
    std::vector<Snapshot> snapshots;
    RunStats stats;
};

// Initial state used by `run`: the steady state behind an upstream reservoir,
// otherwise still water with A = S in the first cell and Q = Q0.
State initial_state(const Scenario& scenario, const Mesh& mesh);

// Linear interpolation between cell centres (clamped at the ends).
FieldRow sample_field(std::span<const FieldRow> cells, double x);

std::vector<FieldRow> kinetic_field(const State& state, const Mesh& mesh,
                                    const Scenario& scenario);
std::vector<FieldRow> moc_field(const MocFrame& frame, std::span<const double> node_x,
                                const Scenario& scenario);

SolverOutput simulate_kinetic(const RunConfig& config);
SolverOutput simulate_moc(const RunConfig& config);

std::string format_rows(std::string_view header, std::span<const FieldRow> rows);
std::string format_summary(const SolverOutput& output);

// Writes <solver>_probe_<k>.csv, <solver>_snapshot_<frame>.csv and
// <solver>_summary.txt into `dir`; returns the paths written.
std::vector<std::filesystem::path> write_output(const SolverOutput& output,
                                                const std::filesystem::path& dir);

// Runs the configured solver(s) and writes their output to config.output_dir.
std::vector<SolverOutput> run_simulation(const RunConfig& config);

}  // namespace pipeflow
