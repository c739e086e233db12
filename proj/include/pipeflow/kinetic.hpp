#pragma once
// Kinetic finite-volume scheme with reflection/transmission upwinding of the
// topography source term.
//
// The Maxwellian is the rectangle A/(2 c sqrt3) on [u - c sqrt3, u + c sqrt3];
// every flux moment is an integral of xi or xi^2 against a constant over an
// explicit interval and is evaluated in closed form.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pipeflow/core.hpp"
#include "pipeflow/flux_kernels.hpp"

namespace pipeflow {

// How the topography jump enters the numerical flux.
//  literal:   reflection/transmission fluxes exactly as derived from the
//             kinetic interface densities.
//  corrected: the same fluxes minus their defect on the still-water pair
//             through the interface, so that g Z + c^2 ln A = const, u = 0 is
//             reproduced exactly. Identical to literal on flat interfaces.
enum class Balance { corrected, literal };

std::string_view to_string(Balance balance);
Balance parse_balance(std::string_view name);

// dt larger than the CFL bound allows.
struct CflViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// A scheme invariant (positive areas) broke; unreachable under the CFL bound.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct KineticParams {
    static constexpr double chi_support_halfwidth = kSqrt3;

    double cfl_coefficient = 0.8;
    Balance balance = Balance::corrected;
    FluxKernel kernel = FluxKernel::scalar;

    void validate() const;
};

struct HalfFlux {
    double f_area = 0.0;
    double f_momentum = 0.0;
};

struct InterfaceFluxPair {
    HalfFlux minus;  // F^- at x_{i+1/2}, used by the left cell
    HalfFlux plus;   // F^+ at x_{i+1/2}, used by the right cell
};

struct CellState {
    double area = 0.0;
    double discharge = 0.0;
    bool operator==(const CellState&) const = default;
};

struct GhostPair {
    CellState left;
    CellState right;
};

// Supplies the two ghost cells for a state (the state's time_t is the time
// at which boundary laws are evaluated).
using BoundaryProvider = std::function<GhostPair(const State&)>;

enum class HalfLine { negative, positive };

struct HalfMoments {
    double m0 = 0.0;  // integral of xi M(+-sqrt(xi^2 - jump))
    double m1 = 0.0;  // integral of xi^2 M(+-sqrt(xi^2 - jump))
};

double maxwellian_density(double A, double u, double c, double xi);

// Moments of M(sign sqrt(xi^2 - potential_jump)) over the half-line of the
// given sign restricted to xi^2 >= potential_jump; potential_jump = 2 g dZ.
HalfMoments shifted_half_moments(double A, double u, double c, double potential_jump,
                                 HalfLine half_line);

// Literal reflection/transmission half fluxes at one interface.
InterfaceFluxPair interface_fluxes(CellState left, CellState right, double z_left, double z_right,
                                   double c, double g);

double cfl_timestep(const State& state, double c, const Mesh& mesh, double cfl_coefficient);

// Per-interface data that only depends on the mesh, c and g.
class InterfaceTopography {
public:
    InterfaceTopography(const Mesh& mesh, double c, double g);

    // Interface k separates extended cells k and k + 1 (0 and N + 1 are ghosts).
    [[nodiscard]] std::span<const double> jumps() const { return jump_; }
    // Still-water defect of the literal flux for a unit left area: mass part
    // and momentum part of F^-, and momentum part of F^+ per unit right area.
    [[nodiscard]] double mass_defect(std::size_t k) const { return mass_defect_[k]; }
    [[nodiscard]] double minus_momentum_defect(std::size_t k) const { return minus_defect_[k]; }
    [[nodiscard]] double plus_momentum_defect(std::size_t k) const { return plus_defect_[k]; }
    // exp(g (Z_R - Z_L) / c^2) = A_L / A_R on a still-water pair.
    [[nodiscard]] double area_ratio(std::size_t k) const { return ratio_[k]; }
    [[nodiscard]] bool flat(std::size_t k) const { return jump_[k] == 0.0; }

private:
    std::vector<double> jump_;
    std::vector<double> mass_defect_;
    std::vector<double> minus_defect_;
    std::vector<double> plus_defect_;
    std::vector<double> ratio_;
};

// Fluxes of every interface of a state (ghosts included), N + 1 entries.
struct FluxField {
    std::vector<double> minus_area, minus_momentum, plus_area, plus_momentum;
};

// Reusable solver bound to one mesh and one set of physical constants.
class KineticSolver {
public:
    KineticSolver(Mesh mesh, PhysicalConstants constants, PipeGeometry geometry,
                  FrictionParams friction, KineticParams params);

    [[nodiscard]] const Mesh& mesh() const { return mesh_; }
    [[nodiscard]] const PhysicalConstants& constants() const { return constants_; }
    [[nodiscard]] const KineticParams& params() const { return params_; }

    [[nodiscard]] double timestep(const State& state) const;
    // Fluxes with the configured balance and kernel.
    void fluxes(const State& state, const GhostPair& ghosts, FluxField& out) const;
    // One explicit step; throws std::domain_error when dt violates the CFL
    // bound and std::logic_error if an area becomes non-positive.
    [[nodiscard]] State step(const State& state, double dt, const BoundaryProvider& boundary) const;

    using Observer = std::function<void(const State&, double dt, std::size_t step_index)>;
    // Advance to t_end; the last step is clamped to land on t_end exactly.
    State run(State state, const BoundaryProvider& boundary, double t_end,
              const Observer& observer = {}) const;

private:
    Mesh mesh_;
    PhysicalConstants constants_;
    PipeGeometry geometry_;
    FrictionParams friction_;
    KineticParams params_;
    InterfaceTopography topography_;
    double friction_k_ = 0.0;
};

// Free-function forms of the solver operations.
State step(const State& state, const Mesh& mesh, double c, double g, double dt,
           const PipeGeometry& geometry, const FrictionParams& friction,
           const BoundaryProvider& boundary, const KineticParams& params = {});

State run(const State& initial, const Mesh& mesh, const KineticParams& params,
          const PhysicalConstants& constants, const PipeGeometry& geometry,
          const FrictionParams& friction, const BoundaryProvider& boundary, double t_end,
          const KineticSolver::Observer& observer = {});

}  // namespace pipeflow
