#include "pipeflow/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels/flux_math.hpp"

namespace pipeflow {

std::string_view to_string(Balance balance) {
    return balance == Balance::literal ? "literal" : "corrected";
}

Balance parse_balance(std::string_view name) {
    if (name == "corrected") return Balance::corrected;
    if (name == "literal") return Balance::literal;
    throw std::invalid_argument("unknown balance '" + std::string(name) + "'");
}

void KineticParams::validate() const {
    if (!(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0)) {
        throw std::invalid_argument("CFL coefficient must lie in (0, 1]");
    }
}

double maxwellian_density(double A, double u, double c, double xi) {
    if (!(A > 0.0) || !(c > 0.0)) throw std::domain_error("maxwellian: A and c must be positive");
    const double s = c * kSqrt3;
    return std::abs(xi - u) <= s ? A / (2.0 * s) : 0.0;
}

HalfMoments shifted_half_moments(double A, double u, double c, double potential_jump,
                                 HalfLine half_line) {
    if (!(A > 0.0) || !(c > 0.0)) {
        throw std::domain_error("shifted_half_moments: A and c must be positive");
    }
    const double s = c * kSqrt3;
    const double h = A / (2.0 * s);
    const double d = potential_jump;
    // eta = sqrt(xi^2 - d) >= sqrt(max(-d, 0)); M(+-eta) is nonzero for
    // +-eta in [u - s, u + s].
    const double v = half_line == HalfLine::positive ? u : 0.0 - u;
    const double lo = detail::maxd(v - s, std::sqrt(detail::maxd(0.0 - d, 0.0)));
    const double hi = detail::maxd(v + s, lo);
    const double lo2 = lo * lo;
    const double hi2 = hi * hi;
    const double a2 = detail::maxd(lo2 + d, 0.0);
    const double b2 = detail::maxd(hi2 + d, 0.0);
    const double m0 = h * (hi2 - lo2) * 0.5;
    const double m1 = h * (b2 * std::sqrt(b2) - a2 * std::sqrt(a2)) / 3.0;
    return {half_line == HalfLine::positive ? m0 : 0.0 - m0, m1};
}

InterfaceFluxPair interface_fluxes(CellState left, CellState right, double z_left, double z_right,
                                   double c, double g) {
    if (!(left.area > 0.0) || !(right.area > 0.0)) {
        throw std::domain_error("interface_fluxes: areas must be positive");
    }
    if (!(c > 0.0)) throw std::domain_error("interface_fluxes: c must be positive");
    const double areas[2] = {left.area, right.area};
    const double discharges[2] = {left.discharge, right.discharge};
    const double jump[1] = {2.0 * g * (z_right - z_left)};
    double ma = 0.0, mq = 0.0, pa = 0.0, pq = 0.0;
    kernels::interface_fluxes_scalar(c, {areas, discharges, jump},
                                     {{&ma, 1}, {&mq, 1}, {&pa, 1}, {&pq, 1}});
    return {{ma, mq}, {pa, pq}};
}

double cfl_timestep(const State& state, double c, const Mesh& mesh, double cfl_coefficient) {
    if (mesh.size() == 0 || state.size() == 0) throw std::domain_error("cfl_timestep: empty mesh");
    if (!(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0)) {
        throw std::domain_error("cfl_timestep: coefficient must lie in (0, 1]");
    }
    const double s = c * kSqrt3;
    double speed = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        speed = std::max(speed, std::abs(state.velocity(i)) + s);
    }
    return cfl_coefficient * mesh.min_width() / speed;
}

InterfaceTopography::InterfaceTopography(const Mesh& mesh, double c, double g) {
    const std::size_t n = mesh.size();
    jump_.assign(n + 1, 0.0);
    mass_defect_.assign(n + 1, 0.0);
    minus_defect_.assign(n + 1, 0.0);
    plus_defect_.assign(n + 1, 0.0);
    ratio_.assign(n + 1, 1.0);
    // Ghost cells share the altitude of their neighbour, so interfaces 0 and
    // n are flat.
    for (std::size_t k = 1; k < n; ++k) {
        const double dz = mesh.z_cells[k] - mesh.z_cells[k - 1];
        jump_[k] = 2.0 * g * dz;
        if (dz == 0.0) continue;
        const double ratio = std::exp(g * dz / (c * c));
        ratio_[k] = ratio;
        const double c2 = c * c;
        const auto unit_left = interface_fluxes({1.0, 0.0}, {1.0 / ratio, 0.0}, 0.0, dz, c, g);
        const auto unit_right = interface_fluxes({ratio, 0.0}, {1.0, 0.0}, 0.0, dz, c, g);
        mass_defect_[k] = unit_left.minus.f_area;
        minus_defect_[k] = unit_left.minus.f_momentum - c2;
        plus_defect_[k] = unit_right.plus.f_momentum - c2;
    }
}

KineticSolver::KineticSolver(Mesh mesh, PhysicalConstants constants, PipeGeometry geometry,
                             FrictionParams friction, KineticParams params)
    : mesh_(std::move(mesh)),
      constants_(constants),
      geometry_(std::move(geometry)),
      friction_(friction),
      params_(params),
      topography_(mesh_, constants_.c, constants_.g) {
    mesh_.validate();
    constants_.validate();
    friction_.validate();
    params_.validate();
    if (params_.kernel == FluxKernel::avx2 && !avx2_available()) {
        throw std::invalid_argument("AVX2 kernel requested but not available");
    }
    friction_k_ = friction_.enabled ? strickler_coefficient(geometry_, friction_) : 0.0;
}

double KineticSolver::timestep(const State& state) const {
    return cfl_timestep(state, constants_.c, mesh_, params_.cfl_coefficient);
}

void KineticSolver::fluxes(const State& state, const GhostPair& ghosts, FluxField& out) const {
    const std::size_t n = mesh_.size();
    std::vector<double> area(n + 2), discharge(n + 2);
    area.front() = ghosts.left.area;
    discharge.front() = ghosts.left.discharge;
    std::copy(state.area_A.begin(), state.area_A.end(), area.begin() + 1);
    std::copy(state.discharge_Q.begin(), state.discharge_Q.end(), discharge.begin() + 1);
    area.back() = ghosts.right.area;
    discharge.back() = ghosts.right.discharge;
    if (!(ghosts.left.area > 0.0) || !(ghosts.right.area > 0.0)) {
        throw std::domain_error("ghost cells must have positive area");
    }

    out.minus_area.resize(n + 1);
    out.minus_momentum.resize(n + 1);
    out.plus_area.resize(n + 1);
    out.plus_momentum.resize(n + 1);
    run_flux_kernel(params_.kernel, constants_.c, {area, discharge, topography_.jumps()},
                    {out.minus_area, out.minus_momentum, out.plus_area, out.plus_momentum});

    if (params_.balance != Balance::corrected) return;
    for (std::size_t k = 0; k <= n; ++k) {
        if (topography_.flat(k)) continue;
        const double left = area[k];
        const double right = area[k + 1];
        const double anchor = std::min(left, right * topography_.area_ratio(k));
        const double mass = anchor * topography_.mass_defect(k);
        out.minus_area[k] -= mass;
        out.plus_area[k] -= mass;
        out.minus_momentum[k] -= left * topography_.minus_momentum_defect(k);
        out.plus_momentum[k] -= right * topography_.plus_momentum_defect(k);
    }
}

State KineticSolver::step(const State& state, double dt, const BoundaryProvider& boundary) const {
    const std::size_t n = mesh_.size();
    if (state.size() != n) throw std::invalid_argument("step: state and mesh sizes differ");
    if (!(dt >= 0.0)) throw std::domain_error("step: negative time step");
    const double s = constants_.c * kSqrt3;
    double speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(state.area_A[i] > 0.0)) {
            throw InvariantViolation("step: non-positive area in cell " + std::to_string(i));
        }
        speed = std::max(speed, std::abs(state.velocity(i)) + s);
    }
    if (dt * speed > mesh_.min_width() * (1.0 + 1e-12)) {
        throw CflViolation("step: dt = " + std::to_string(dt) + " violates the CFL bound " +
                           std::to_string(mesh_.min_width() / speed));
    }

    FluxField f;
    fluxes(state, boundary(state), f);

    State next;
    next.area_A.resize(n);
    next.discharge_Q.resize(n);
    next.time_t = state.time_t + dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double ratio = dt / mesh_.widths[i];
        next.area_A[i] = state.area_A[i] - ratio * (f.minus_area[i + 1] - f.plus_area[i]);
        next.discharge_Q[i] =
            state.discharge_Q[i] - ratio * (f.minus_momentum[i + 1] - f.plus_momentum[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(next.area_A[i] > 0.0) || !std::isfinite(next.area_A[i])) {
            throw InvariantViolation("step: area became non-positive in cell " +
                                     std::to_string(i));
        }
    }
    if (friction_k_ > 0.0) {
        const double g = constants_.g;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = next.discharge_Q[i] / next.area_A[i];
            next.discharge_Q[i] /= 1.0 + dt * g * friction_k_ * std::abs(u);
        }
    }
    return next;
}

State KineticSolver::run(State state, const BoundaryProvider& boundary, double t_end,
                         const Observer& observer) const {
    if (t_end < state.time_t) throw std::invalid_argument("run: t_end precedes the initial time");
    std::size_t steps = 0;
    while (state.time_t < t_end) {
        double dt = timestep(state);
        const bool last = state.time_t + dt >= t_end;
        if (last) dt = t_end - state.time_t;
        state = step(state, dt, boundary);
        if (last) state.time_t = t_end;
        ++steps;
        if (observer) observer(state, dt, steps);
    }
    return state;
}

State step(const State& state, const Mesh& mesh, double c, double g, double dt,
           const PipeGeometry& geometry, const FrictionParams& friction,
           const BoundaryProvider& boundary, const KineticParams& params) {
    PhysicalConstants constants{g, 1.0, 1.0, c};
    const KineticSolver solver(mesh, constants, geometry, friction, params);
    return solver.step(state, dt, boundary);
}

State run(const State& initial, const Mesh& mesh, const KineticParams& params,
          const PhysicalConstants& constants, const PipeGeometry& geometry,
          const FrictionParams& friction, const BoundaryProvider& boundary, double t_end,
          const KineticSolver::Observer& observer) {
    const KineticSolver solver(mesh, constants, geometry, friction, params);
    return solver.run(initial, boundary, t_end, observer);
}

}  // namespace pipeflow
