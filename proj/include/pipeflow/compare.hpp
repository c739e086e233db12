#pragma once
// Kinetic-vs-MOC probe comparison: error norms, oscillation period and first
// head extremum.

#include <limits>
#include <optional>
#include <span>
#include <string>

#include "pipeflow/simulation.hpp"

namespace pipeflow {

struct CompareWindow {
    // Errors are taken over [0, end] intersected with both series.
    double end = std::numeric_limits<double>::infinity();
    // Period detection only looks at samples after this time (e.g. after
    // the valve has finished closing).
    double period_start = 0.0;
};

struct ComparisonReport {
    double probe_x = 0.0;
    double linf_head_error = 0.0;
    double l2_head_error = 0.0;  // root mean square over the common grid
    double linf_discharge_error = 0.0;
    std::optional<double> kinetic_period;
    std::optional<double> moc_period;
    std::optional<double> first_peak_kinetic;
    std::optional<double> first_peak_moc;
};

// Oscillation period of a signal from the median spacing of its upward
// crossings of the mean, with a hysteresis band of 10% of the half
// amplitude. Absent when fewer than two crossings are found.
std::optional<double> oscillation_period(std::span<const double> t, std::span<const double> y);

// Value of y at its first extremum relative to y[0]: the running maximum of
// |y - y[0]|, confirmed once the deviation falls back below half of it.
// Peaks smaller than 10% of the largest deviation are ignored. Absent for
// flat or empty signals; the global extremum if the signal never falls back.
std::optional<double> first_extremum(std::span<const double> y);

ComparisonReport compare_series(const ProbeSeries& kinetic, const ProbeSeries& moc,
                                const CompareWindow& window = {});

std::string format_report(const ComparisonReport& report);

}  // namespace pipeflow
