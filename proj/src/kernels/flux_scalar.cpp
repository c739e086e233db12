#include "flux_math.hpp"
#include "pipeflow/flux_kernels.hpp"

namespace pipeflow::kernels {

void interface_fluxes_scalar(double c, const FluxBatchIn& in, const FluxBatchOut& out) {
    const std::size_t n = in.jump.size();
    const double s = c * kSqrt3;
    const double inv_two_s = 1.0 / (2.0 * s);
    for (std::size_t k = 0; k < n; ++k) {
        const double al = in.area[k];
        const double ar = in.area[k + 1];
        const double ul = in.discharge[k] / al;
        const double ur = in.discharge[k + 1] / ar;
        const double d = in.jump[k];
        const auto minus = detail::upwind_half_flux(al, ul, ar, ur, d, s, inv_two_s);
        const auto plus =
            detail::upwind_half_flux(ar, 0.0 - ur, al, 0.0 - ul, 0.0 - d, s, inv_two_s);
        out.minus_area[k] = minus.m0;
        out.minus_momentum[k] = minus.m1;
        out.plus_area[k] = 0.0 - plus.m0;
        out.plus_momentum[k] = plus.m1;
    }
}

}  // namespace pipeflow::kernels
