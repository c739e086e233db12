#pragma once
// Property suites run against a configured scenario by `pipeflow check`.

#include <string>
#include <vector>

#include "pipeflow/config.hpp"

namespace pipeflow {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct CheckReport {
    std::vector<SuiteResult> suites;
    [[nodiscard]] bool passed() const;
};

// Suites:
//  well_balanced_discharge / well_balanced_area
//      still water over the configured topography, walls, 1000 steps
//  positivity          the configured run; residual is the smallest area
//  flux_continuity     mass flux mismatch |F-_A - F+_A| / (|F-_A| + A c) along the run
//  mass_conservation   configured topography with walls, 1000 steps
//  momentum_conservation / entropy_decay
//      flat periodic pipe of the configured size, smooth data, 1000 steps
CheckReport check_invariants(const RunConfig& config);

std::string format_check(const CheckReport& report);

}  // namespace pipeflow
