#pragma once
// Domain types and physical relations for pressurized flow in a closed pipe.
//
// The conservative unknowns are the "FS-equivalent" wetted area A = rho S / rho0
// and discharge Q = rho S u / rho0. The density ratio is therefore A / S.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace pipeflow {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.7320508075688772935;

struct PhysicalConstants {
    double g = 9.81;
    double beta = 5.0e-10;
    double rho0 = 1000.0;
    double c = 0.0;  // model sound speed used by the scheme

    // c defaults to 1/sqrt(beta rho0).
    static PhysicalConstants make(double g, double beta, double rho0);
    static PhysicalConstants make(double g, double beta, double rho0, double c);
    void validate() const;
    bool operator==(const PhysicalConstants&) const = default;
};

// Bottom elevation Z(x). Either analytic (z0 - x sin(slope)) or a table with
// linear interpolation, clamped at the ends.
struct Altitude {
    double upstream_m = 0.0;
    double slope_deg = 0.0;  // positive: pipe descends downstream
    std::vector<double> table_x;
    std::vector<double> table_z;

    [[nodiscard]] bool tabulated() const { return !table_x.empty(); }
    [[nodiscard]] double at(double x) const;
    void validate() const;
    bool operator==(const Altitude&) const = default;
};

struct PipeGeometry {
    double length_L = 0.0;
    double section_S = 0.0;
    double perimeter_Pm = 0.0;
    double diameter_delta = 0.0;
    double wall_e = 0.0;
    double young_E = 0.0;
    Altitude altitude;

    static PipeGeometry circular(double length, double section, double wall_e, double young_E,
                                 Altitude altitude);
    [[nodiscard]] double hydraulic_radius() const { return section_S / perimeter_Pm; }
    void validate() const;
    bool operator==(const PipeGeometry&) const = default;
};

struct FrictionParams {
    bool enabled = false;
    double strickler_Ks = 0.0;

    void validate() const;
    bool operator==(const FrictionParams&) const = default;
};

// Uniform or non-uniform 1D mesh with a piecewise-constant bottom.
struct Mesh {
    std::vector<double> centers;
    std::vector<double> widths;
    std::vector<double> z_cells;

    static Mesh uniform(double length, std::size_t cells, const Altitude& altitude);
    static Mesh from_cells(std::vector<double> centers, std::vector<double> widths,
                           std::vector<double> z_cells);

    [[nodiscard]] std::size_t size() const { return centers.size(); }
    [[nodiscard]] double min_width() const;
    void validate() const;
};

struct State {
    std::vector<double> area_A;
    std::vector<double> discharge_Q;
    double time_t = 0.0;

    State() = default;
    State(std::size_t n, double area, double discharge, double t = 0.0)
        : area_A(n, area), discharge_Q(n, discharge), time_t(t) {}

    [[nodiscard]] std::size_t size() const { return area_A.size(); }
    [[nodiscard]] double velocity(std::size_t i) const { return discharge_Q[i] / area_A[i]; }
    void validate() const;
    bool operator==(const State&) const = default;
};

double sound_speed(double beta, double rho0);
double effective_wave_speed(double c, double diameter_delta, double wall_e, double young_E,
                            double beta);
double piezometric_head(double A, double S, double z, double delta, double c, double g);
// Inverse of piezometric_head in A.
double area_from_piezometric_head(double head, double S, double z, double delta, double c,
                                  double g);
double total_head(double A, double u, double z, double c, double g);
double entropy_cell(double A, double Q, double z, double c, double g);
double friction_slope(double u, const PipeGeometry& geometry, const FrictionParams& friction);
// K of the Manning-Strickler law, 1 / (Ks^2 Rh^{4/3}).
double strickler_coefficient(const PipeGeometry& geometry, const FrictionParams& friction);

// Sum of h_i * entropy_cell over the mesh.
double total_entropy(const State& state, const Mesh& mesh, double c, double g);
double total_mass(const State& state, const Mesh& mesh);
double total_momentum(const State& state, const Mesh& mesh);

}  // namespace pipeflow
