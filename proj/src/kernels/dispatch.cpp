#include <stdexcept>
#include <string>

#include "pipeflow/flux_kernels.hpp"

namespace pipeflow {

#ifndef PIPEFLOW_HAVE_AVX2
namespace kernels {
void interface_fluxes_avx2(double, const FluxBatchIn&, const FluxBatchOut&) {
    throw std::invalid_argument("this build has no AVX2 flux kernel");
}
}  // namespace kernels
#endif

bool avx2_available() {
#if defined(PIPEFLOW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

FluxKernel detect_flux_kernel() { return avx2_available() ? FluxKernel::avx2 : FluxKernel::scalar; }

void run_flux_kernel(FluxKernel kernel, double c, const FluxBatchIn& in, const FluxBatchOut& out) {
    const std::size_t n = in.jump.size();
    if (in.area.size() != n + 1 || in.discharge.size() != n + 1 || out.minus_area.size() < n ||
        out.minus_momentum.size() < n || out.plus_area.size() < n || out.plus_momentum.size() < n) {
        throw std::invalid_argument("flux kernel: inconsistent batch sizes");
    }
    switch (kernel) {
        case FluxKernel::scalar:
            kernels::interface_fluxes_scalar(c, in, out);
            return;
        case FluxKernel::avx2:
            if (!avx2_available()) throw std::invalid_argument("AVX2 kernel not available");
            kernels::interface_fluxes_avx2(c, in, out);
            return;
    }
}

std::string_view to_string(FluxKernel kernel) {
    return kernel == FluxKernel::avx2 ? "avx2" : "scalar";
}

FluxKernel parse_flux_kernel(std::string_view name) {
    if (name == "scalar") return FluxKernel::scalar;
    if (name == "avx2") return FluxKernel::avx2;
    if (name == "auto") return detect_flux_kernel();
    throw std::invalid_argument("unknown flux kernel '" + std::string(name) + "'");
}

}  // namespace pipeflow
