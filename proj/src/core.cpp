#include "pipeflow/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pipeflow {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

PhysicalConstants PhysicalConstants::make(double g, double beta, double rho0) {
    return make(g, beta, rho0, sound_speed(beta, rho0));
}

PhysicalConstants PhysicalConstants::make(double g, double beta, double rho0, double c) {
    PhysicalConstants k{g, beta, rho0, c};
    k.validate();
    return k;
}

void PhysicalConstants::validate() const {
    require_positive(g, "gravity");
    require_positive(beta, "compressibility");
    require_positive(rho0, "reference density");
    require_positive(c, "sound speed");
}

double Altitude::at(double x) const {
    if (!tabulated()) {
        return upstream_m - x * std::sin(slope_deg * kPi / 180.0);
    }
    if (x <= table_x.front()) return table_z.front();
    if (x >= table_x.back()) return table_z.back();
    auto it = std::upper_bound(table_x.begin(), table_x.end(), x);
    const auto k = static_cast<std::size_t>(it - table_x.begin());
    const double w = (x - table_x[k - 1]) / (table_x[k] - table_x[k - 1]);
    return table_z[k - 1] + w * (table_z[k] - table_z[k - 1]);
}

void Altitude::validate() const {
    if (!tabulated()) {
        if (!std::isfinite(upstream_m) || !std::isfinite(slope_deg)) {
            throw std::invalid_argument("altitude: non-finite slope description");
        }
        return;
    }
    if (table_x.size() != table_z.size() || table_x.size() < 2) {
        throw std::invalid_argument("altitude table needs at least two (x, z) pairs");
    }
    for (std::size_t k = 1; k < table_x.size(); ++k) {
        if (!(table_x[k] > table_x[k - 1])) {
            throw std::invalid_argument("altitude table x must be strictly increasing");
        }
    }
}

PipeGeometry PipeGeometry::circular(double length, double section, double wall_e, double young_E,
                                    Altitude altitude) {
    require_positive(section, "section");
    PipeGeometry geo;
    geo.length_L = length;
    geo.section_S = section;
    geo.diameter_delta = 2.0 * std::sqrt(section / kPi);
    geo.perimeter_Pm = kPi * geo.diameter_delta;
    geo.wall_e = wall_e;
    geo.young_E = young_E;
    geo.altitude = std::move(altitude);
    geo.validate();
    return geo;
}

void PipeGeometry::validate() const {
    require_positive(length_L, "pipe length");
    require_positive(section_S, "pipe section");
    require_positive(perimeter_Pm, "pipe perimeter");
    require_positive(diameter_delta, "pipe diameter");
    if (wall_e < 0.0 || young_E < 0.0) {
        throw std::invalid_argument("wall thickness and Young modulus must be non-negative");
    }
    altitude.validate();
}

void FrictionParams::validate() const {
    if (enabled) require_positive(strickler_Ks, "Strickler coefficient");
}

Mesh Mesh::uniform(double length, std::size_t cells, const Altitude& altitude) {
    require_positive(length, "mesh length");
    if (cells == 0) throw std::domain_error("mesh needs at least one cell");
    const double h = length / static_cast<double>(cells);
    std::vector<double> centers(cells), widths(cells, h), z(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        centers[i] = (static_cast<double>(i) + 0.5) * h;
        z[i] = altitude.at(centers[i]);
    }
    return from_cells(std::move(centers), std::move(widths), std::move(z));
}

Mesh Mesh::from_cells(std::vector<double> centers, std::vector<double> widths,
                      std::vector<double> z_cells) {
    Mesh mesh{std::move(centers), std::move(widths), std::move(z_cells)};
    mesh.validate();
    return mesh;
}

double Mesh::min_width() const {
    if (widths.empty()) throw std::domain_error("empty mesh");
    return *std::min_element(widths.begin(), widths.end());
}

void Mesh::validate() const {
    if (centers.empty()) throw std::domain_error("empty mesh");
    if (widths.size() != centers.size() || z_cells.size() != centers.size()) {
        throw std::invalid_argument("mesh sequences must have equal length");
    }
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (!(widths[i] > 0.0)) throw std::invalid_argument("mesh widths must be positive");
        if (i > 0 && !(centers[i] > centers[i - 1])) {
            throw std::invalid_argument("mesh centers must be strictly increasing");
        }
    }
}

void State::validate() const {
    if (area_A.size() != discharge_Q.size()) {
        throw std::invalid_argument("state: area and discharge sizes differ");
    }
    for (std::size_t i = 0; i < area_A.size(); ++i) {
        if (!(area_A[i] > 0.0) || !std::isfinite(area_A[i])) {
            throw std::domain_error("state: non-positive area in cell " + std::to_string(i));
        }
        if (!std::isfinite(discharge_Q[i] / area_A[i])) {
            throw std::domain_error("state: non-finite velocity in cell " + std::to_string(i));
        }
    }
}

double sound_speed(double beta, double rho0) {
    require_positive(beta, "compressibility");
    require_positive(rho0, "reference density");
    return 1.0 / std::sqrt(beta * rho0);
}

double effective_wave_speed(double c, double diameter_delta, double wall_e, double young_E,
                            double beta) {
    require_positive(c, "sound speed");
    require_positive(diameter_delta, "diameter");
    require_positive(wall_e, "wall thickness");
    require_positive(young_E, "Young modulus");
    require_positive(beta, "compressibility");
    return c / std::sqrt(1.0 + diameter_delta / (beta * wall_e * young_E));
}

double piezometric_head(double A, double S, double z, double delta, double c, double g) {
    require_positive(A, "area");
    require_positive(S, "section");
    return z + delta + c * c * (A / S - 1.0) / g;
}

double area_from_piezometric_head(double head, double S, double z, double delta, double c,
                                  double g) {
    require_positive(S, "section");
    const double A = S * (1.0 + g * (head - z - delta) / (c * c));
    if (!(A > 0.0)) throw std::domain_error("head inversion gives a non-positive area");
    return A;
}

double total_head(double A, double u, double z, double c, double g) {
    require_positive(A, "area");
    return 0.5 * u * u + g * z + c * c * std::log(A);
}

double entropy_cell(double A, double Q, double z, double c, double g) {
    require_positive(A, "area");
    return Q * Q / (2.0 * A) + g * A * z + c * c * A * std::log(A);
}

double strickler_coefficient(const PipeGeometry& geometry, const FrictionParams& friction) {
    if (!friction.enabled) return 0.0;
    const double ks = friction.strickler_Ks;
    return 1.0 / (ks * ks * std::pow(geometry.hydraulic_radius(), 4.0 / 3.0));
}

double friction_slope(double u, const PipeGeometry& geometry, const FrictionParams& friction) {
    return strickler_coefficient(geometry, friction) * u * std::abs(u);
}

double total_entropy(const State& state, const Mesh& mesh, double c, double g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        sum += mesh.widths[i] *
               entropy_cell(state.area_A[i], state.discharge_Q[i], mesh.z_cells[i], c, g);
    }
    return sum;
}

double total_mass(const State& state, const Mesh& mesh) {
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) sum += mesh.widths[i] * state.area_A[i];
    return sum;
}

double total_momentum(const State& state, const Mesh& mesh) {
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) sum += mesh.widths[i] * state.discharge_Q[i];
    return sum;
}

}  // namespace pipeflow
