#pragma once
// Batched interface-flux kernels.
//
// A batch covers n interfaces over an extended cell array of n + 1 cells
// (ghosts included): interface k sits between cells k and k + 1. The jump
// array holds 2 g (Z_{k+1} - Z_k) per interface. Outputs are the literal
// reflection/transmission half fluxes F^- (seen by the left cell) and F^+
// (seen by the right cell).
//
// Every variant must produce bit-identical results to the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>

namespace pipeflow {

enum class FluxKernel { scalar, avx2 };

struct FluxBatchIn {
    std::span<const double> area;       // n + 1
    std::span<const double> discharge;  // n + 1
    std::span<const double> jump;       // n
};

struct FluxBatchOut {
    std::span<double> minus_area;
    std::span<double> minus_momentum;
    std::span<double> plus_area;
    std::span<double> plus_momentum;
};

namespace kernels {

void interface_fluxes_scalar(double c, const FluxBatchIn& in, const FluxBatchOut& out);
void interface_fluxes_avx2(double c, const FluxBatchIn& in, const FluxBatchOut& out);

}  // namespace kernels

// True when the binary carries an AVX2 variant and the CPU supports it.
bool avx2_available();
// Best available kernel on this machine.
FluxKernel detect_flux_kernel();
// Throws std::invalid_argument for a kernel that is not available.
void run_flux_kernel(FluxKernel kernel, double c, const FluxBatchIn& in, const FluxBatchOut& out);

std::string_view to_string(FluxKernel kernel);
FluxKernel parse_flux_kernel(std::string_view name);  // "scalar" | "avx2" | "auto"

}  // namespace pipeflow
