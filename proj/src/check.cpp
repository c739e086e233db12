#include "pipeflow/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "format.hpp"
#include "pipeflow/simulation.hpp"

namespace pipeflow {

namespace {

constexpr std::size_t kSuiteSteps = 1000;

SuiteResult make_result(std::string name, double residual, double threshold,
                        std::string detail = {}) {
    const bool ok = std::isfinite(residual) && residual <= threshold;
    return {std::move(name), ok, residual, threshold, std::move(detail)};
}

SuiteResult failed(std::string name, double threshold, const std::exception& e) {
    return {std::move(name), false, std::numeric_limits<double>::infinity(), threshold, e.what()};
}

// Steps with the CFL time step and reports the state after each step.
template <typename Visit>
State march(const KineticSolver& solver, State state, const BoundaryProvider& boundary,
            std::size_t steps, Visit&& visit) {
    for (std::size_t k = 1; k <= steps; ++k) {
        state = solver.step(state, solver.timestep(state), boundary);
        visit(state, k);
    }
    return state;
}

void well_balanced(const RunConfig& config, CheckReport& report) {
    const Scenario& sc = config.scenario;
    const double c = sc.constants.c;
    const double g = sc.constants.g;
    try {
        const Mesh mesh = sc.make_mesh();
        const KineticSolver solver(mesh, sc.constants, sc.geometry, sc.friction,
                                   config.kinetic_params());
        const BoundaryProvider walls = make_boundary(mesh, sc.geometry, Wall{}, Wall{}, c, g);
        const State rest = still_water_state(mesh, sc.geometry.section_S, c, g);
        double scale = 0.0;
        for (double a : rest.area_A) scale = std::max(scale, a * c);

        double q_res = 0.0, a_res = 0.0;
        march(solver, rest, walls, kSuiteSteps, [&](const State& s, std::size_t) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                q_res = std::max(q_res, std::abs(s.discharge_Q[i]) / scale);
                a_res = std::max(a_res,
                                 std::abs(s.area_A[i] - rest.area_A[i]) / rest.area_A[i]);
            }
        });
        report.suites.push_back(make_result("well_balanced_discharge", q_res, 1e-10,
                                            "max|Q| / max(A c) over 1000 steps at rest"));
        report.suites.push_back(make_result("well_balanced_area", a_res, 1e-12,
                                            "max relative change of A over 1000 steps at rest"));
    } catch (const std::exception& e) {
        report.suites.push_back(failed("well_balanced_discharge", 1e-10, e));
        report.suites.push_back(failed("well_balanced_area", 1e-12, e));
    }
}

double flux_mismatch(const KineticSolver& solver, const State& state, const GhostPair& ghosts,
                     double c) {
    FluxField f;
    solver.fluxes(state, ghosts, f);
    const std::size_t n = state.size();
    double worst = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double left = k == 0 ? ghosts.left.area : state.area_A[k - 1];
        const double right = k == n ? ghosts.right.area : state.area_A[k];
        const double scale = std::abs(f.minus_area[k]) + std::max(left, right) * c;
        worst = std::max(worst, std::abs(f.minus_area[k] - f.plus_area[k]) / scale);
    }
    return worst;
}

void positivity_and_continuity(const RunConfig& config, CheckReport& report) {
    const Scenario& sc = config.scenario;
    const double c = sc.constants.c;
    const double g = sc.constants.g;
    try {
        const Mesh mesh = sc.make_mesh();
        const KineticSolver solver(mesh, sc.constants, sc.geometry, sc.friction,
                                   config.kinetic_params());
        const BoundaryProvider boundary =
            make_boundary(mesh, sc.geometry, sc.upstream, sc.downstream, c, g);
        const State initial = initial_state(sc, mesh);
        double min_area = *std::min_element(initial.area_A.begin(), initial.area_A.end());
        double mismatch = flux_mismatch(solver, initial, boundary(initial), c);
        std::size_t steps = 0;
        solver.run(initial, boundary, sc.t_end, [&](const State& s, double, std::size_t k) {
            min_area = std::min(min_area, *std::min_element(s.area_A.begin(), s.area_A.end()));
            if (k % 25 == 0) mismatch = std::max(mismatch, flux_mismatch(solver, s, boundary(s), c));
            steps = k;
        });
        SuiteResult pos{"positivity", min_area > 0.0, min_area, 0.0,
                        "smallest area over " + std::to_string(steps) +
                            " steps (must stay > 0)"};
        report.suites.push_back(pos);
        report.suites.push_back(make_result("flux_continuity", mismatch, 1e-12,
                                            "max |F-_A - F+_A| / (|F-_A| + A c)"));
    } catch (const std::exception& e) {
        report.suites.push_back(failed("positivity", 0.0, e));
        report.suites.push_back(failed("flux_continuity", 1e-12, e));
    }
}

void mass_conservation(const RunConfig& config, CheckReport& report) {
    const Scenario& sc = config.scenario;
    const double c = sc.constants.c;
    const double g = sc.constants.g;
    try {
        const Mesh mesh = sc.make_mesh();
        const KineticSolver solver(mesh, sc.constants, sc.geometry, sc.friction,
                                   config.kinetic_params());
        const BoundaryProvider walls = make_boundary(mesh, sc.geometry, Wall{}, Wall{}, c, g);
        const State initial = initial_state(sc, mesh);
        const double m0 = total_mass(initial, mesh);
        double drift = 0.0;
        march(solver, initial, walls, kSuiteSteps, [&](const State& s, std::size_t) {
            drift = std::max(drift, std::abs(total_mass(s, mesh) - m0) / m0);
        });
        report.suites.push_back(make_result("mass_conservation", drift, 1e-12,
                                            "relative drift of sum h A with walls"));
    } catch (const std::exception& e) {
        report.suites.push_back(failed("mass_conservation", 1e-12, e));
    }
}

void periodic_suites(const RunConfig& config, CheckReport& report) {
    const Scenario& sc = config.scenario;
    const double c = sc.constants.c;
    const double g = sc.constants.g;
    try {
        const double length = sc.geometry.length_L;
        const Mesh mesh = Mesh::uniform(length, sc.mesh_cells, Altitude{});
        PipeGeometry flat = sc.geometry;
        flat.altitude = Altitude{};
        const KineticSolver solver(mesh, sc.constants, flat, FrictionParams{},
                                   config.kinetic_params());
        const BoundaryProvider loop =
            make_boundary(mesh, flat, Periodic{}, Periodic{}, c, g);

        State state(mesh.size(), 0.0, 0.0);
        const double S = sc.geometry.section_S;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            const double phase = 2.0 * kPi * mesh.centers[i] / length;
            state.area_A[i] = S * (1.0 + 1e-3 * std::sin(phase));
            state.discharge_Q[i] = state.area_A[i] * (1.0 + 0.5 * std::sin(phase + 1.0));
        }
        const double q0 = total_momentum(state, mesh);
        double drift = 0.0;
        double entropy = total_entropy(state, mesh, c, g);
        double worst_rise = 0.0;
        std::size_t rises = 0;
        march(solver, state, loop, kSuiteSteps, [&](const State& s, std::size_t) {
            drift = std::max(drift, std::abs(total_momentum(s, mesh) - q0) / std::abs(q0));
            const double e = total_entropy(s, mesh, c, g);
            const double rise = (e - entropy) / std::abs(entropy);
            worst_rise = std::max(worst_rise, rise);
            if (rise > 1e-8) ++rises;
            entropy = e;
        });
        report.suites.push_back(make_result("momentum_conservation", drift, 1e-11,
                                            "relative drift of sum h Q, flat periodic pipe"));
        SuiteResult ent{"entropy_decay", rises == 0, worst_rise, 1e-8,
                        std::to_string(rises) + " steps with a relative entropy rise > 1e-8"};
        report.suites.push_back(ent);
    } catch (const std::exception& e) {
        report.suites.push_back(failed("momentum_conservation", 1e-11, e));
        report.suites.push_back(failed("entropy_decay", 1e-8, e));
    }
}

}  // namespace

bool CheckReport::passed() const {
    return !suites.empty() &&
           std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed; });
}

CheckReport check_invariants(const RunConfig& config) {
    config.validate();
    CheckReport report;
    well_balanced(config, report);
    positivity_and_continuity(config, report);
    mass_conservation(config, report);
    periodic_suites(config, report);
    return report;
}

std::string format_check(const CheckReport& report) {
    std::ostringstream s;
    for (const auto& r : report.suites) {
        s << (r.passed ? "PASS " : "FAIL ") << r.name
          << " residual=" << detail::format_number(r.residual)
          << " threshold=" << r.threshold;
        if (!r.detail.empty()) s << "  (" << r.detail << ")";
        s << '\n';
    }
    s << (report.passed() ? "all suites passed" : "some suites failed") << '\n';
    return s.str();
}

}  // namespace pipeflow
