#include "pipeflow/moc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pipeflow {

MocState::MocState(std::vector<double> head, std::vector<double> discharge, double wave_speed,
                   double spacing, double t)
    : head_H(std::move(head)),
      discharge_Q(std::move(discharge)),
      wave_speed_a(wave_speed),
      node_spacing(spacing),
      time_t(t) {
    validate();
}

void MocState::validate() const {
    if (head_H.size() < 2 || head_H.size() != discharge_Q.size()) {
        throw std::invalid_argument("MOC state needs >= 2 nodes with matching H and Q");
    }
    if (!(wave_speed_a > 0.0) || !(node_spacing > 0.0)) {
        throw std::invalid_argument("MOC wave speed and node spacing must be positive");
    }
}

MocState moc_step(const MocState& state, double g, double section_S, const PipeGeometry& geometry,
                  const FrictionParams& friction, const BoundaryCondition& upstream,
                  const BoundaryCondition& downstream) {
    const std::size_t n = state.size();
    const auto& H = state.head_H;
    const auto& Q = state.discharge_Q;
    const double b = state.wave_speed_a / (g * section_S);
    // Head loss per node spacing: Sf dx with Sf = K Q|Q| / S^2.
    const double r = strickler_coefficient(geometry, friction) * state.node_spacing /
                     (section_S * section_S);
    const double t_next = state.time_t + state.dt();

    // C+ arriving at node i from i - 1 and C- arriving from i + 1.
    const auto cp = [&](std::size_t i) {
        const double q = Q[i - 1];
        return H[i - 1] + b * q - r * q * std::abs(q);
    };
    const auto cm = [&](std::size_t i) {
        const double q = Q[i + 1];
        return H[i + 1] - b * q + r * q * std::abs(q);
    };

    MocState next = state;
    next.time_t = t_next;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double p = cp(i);
        const double m = cm(i);
        next.head_H[i] = 0.5 * (p + m);
        next.discharge_Q[i] = (p - m) / (2.0 * b);
    }

    // Upstream node: only C- is available.
    {
        const double m = cm(0);
        if (const auto* res = std::get_if<ReservoirHead>(&upstream)) {
            next.head_H[0] = res->head_m;
            next.discharge_Q[0] = (res->head_m - m) / b;
        } else if (const auto* pd = std::get_if<PrescribedDischarge>(&upstream)) {
            next.discharge_Q[0] = pd->law(t_next);
            next.head_H[0] = m + b * next.discharge_Q[0];
        } else if (std::holds_alternative<Wall>(upstream)) {
            next.discharge_Q[0] = 0.0;
            next.head_H[0] = m;
        } else {
            throw std::invalid_argument("moc_step: unsupported upstream boundary '" +
                                        std::string(boundary_kind(upstream)) + "'");
        }
    }
    // Downstream node: only C+ is available.
    {
        const double p = cp(n - 1);
        if (const auto* res = std::get_if<ReservoirHead>(&downstream)) {
            next.head_H[n - 1] = res->head_m;
            next.discharge_Q[n - 1] = (p - res->head_m) / b;
        } else if (const auto* pd = std::get_if<PrescribedDischarge>(&downstream)) {
            next.discharge_Q[n - 1] = pd->law(t_next);
            next.head_H[n - 1] = p - b * next.discharge_Q[n - 1];
        } else if (std::holds_alternative<Wall>(downstream)) {
            next.discharge_Q[n - 1] = 0.0;
            next.head_H[n - 1] = p;
        } else {
            throw std::invalid_argument("moc_step: unsupported downstream boundary '" +
                                        std::string(boundary_kind(downstream)) + "'");
        }
    }
    return next;
}

MocState moc_initial_state(const Scenario& scenario, std::size_t node_count) {
    if (node_count < 2) throw std::invalid_argument("MOC needs at least 2 nodes");
    const auto& geo = scenario.geometry;
    const double c = scenario.constants.c;
    const double g = scenario.constants.g;
    const double dx = geo.length_L / static_cast<double>(node_count - 1);

    // Nodes as zero-width sample points of the steady state.
    std::vector<double> x(node_count), z(node_count);
    for (std::size_t j = 0; j < node_count; ++j) {
        x[j] = static_cast<double>(j) * dx;
        z[j] = geo.altitude.at(x[j]);
    }
    std::vector<double> head(node_count), discharge(node_count);
    if (std::holds_alternative<ReservoirHead>(scenario.upstream)) {
        // steady_state_init anchors its total head at the first sample, which
        // is the inlet node itself.
        const Mesh samples = Mesh::from_cells(x, std::vector<double>(node_count, dx), z);
        const State steady = steady_state_init(scenario, samples);
        for (std::size_t j = 0; j < node_count; ++j) {
            head[j] = piezometric_head(steady.area_A[j], geo.section_S, z[j], geo.diameter_delta,
                                       c, g);
            discharge[j] = steady.discharge_Q[j];
        }
    } else {
        // Hydrostatic rest: a flat piezometric line through the first node's crown.
        for (std::size_t j = 0; j < node_count; ++j) {
            head[j] = z.front() + geo.diameter_delta;
            discharge[j] = scenario.initial_discharge_Q0;
        }
    }
    return MocState(std::move(head), std::move(discharge), c, dx, 0.0);
}

MocSeries moc_run(const Scenario& scenario, std::size_t node_count, std::size_t stride) {
    MocState state = moc_initial_state(scenario, node_count);
    MocSeries series;
    series.node_x.resize(node_count);
    for (std::size_t j = 0; j < node_count; ++j) {
        series.node_x[j] = static_cast<double>(j) * state.node_spacing;
    }
    series.frames.push_back({state.time_t, state.head_H, state.discharge_Q});
    if (scenario.t_end <= 0.0) return series;

    const auto steps = static_cast<std::size_t>(std::ceil(scenario.t_end / state.dt() - 1e-9));
    const std::size_t every = stride == 0 ? 1 : stride;
    const double g = scenario.constants.g;
    const double section = scenario.geometry.section_S;
    for (std::size_t k = 1; k <= steps; ++k) {
        // Step count based time avoids drift from repeated additions.
        state = moc_step(state, g, section, scenario.geometry, scenario.friction,
                         scenario.upstream, scenario.downstream);
        state.time_t = static_cast<double>(k) * state.dt();
        if (k % every == 0 || k == steps) {
            series.frames.push_back({state.time_t, state.head_H, state.discharge_Q});
        }
    }
    return series;
}

}  // namespace pipeflow
