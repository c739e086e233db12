#pragma once
// Scalar closed forms for moments of the rectangular Maxwellian
//   M(xi) = A / (2 s) on [u - s, u + s],  s = c sqrt(3).
//
// All interval clamps use maxd/mind, which have the exact semantics of the
// x86 maxpd/minpd instructions, so the AVX2 kernel can follow the same
// operation sequence and stay bit-identical.

#include <cmath>

#include "pipeflow/core.hpp"

namespace pipeflow::detail {

inline double maxd(double a, double b) { return a > b ? a : b; }
inline double mind(double a, double b) { return a < b ? a : b; }

struct Moments {
    double m0 = 0.0;  // integral of xi M
    double m1 = 0.0;  // integral of xi^2 M
};

// Half flux of the particles leaving an "upstream" cell (area a_up, velocity
// v_up, moving towards positive eta) across an interface with potential jump
// d = 2 g (Z_down - Z_up), including reflection and the particles transmitted
// from the "downstream" cell (a_dn, v_dn). This is F^- of the interface when
// up = left; F^+ is obtained by calling it on the mirrored data and negating
// the mass component.
inline Moments upwind_half_flux(double a_up, double v_up, double a_dn, double v_dn, double d,
                                double s, double inv_two_s) {
    const double h_up = a_up * inv_two_s;
    const double h_dn = a_dn * inv_two_s;
    const double root_up = std::sqrt(maxd(d, 0.0));
    const double root_dn = std::sqrt(maxd(0.0 - d, 0.0));

    // Outgoing upstream particles, eta >= 0.
    const double lo = maxd(v_up - s, 0.0);
    const double hi = maxd(v_up + s, lo);
    const double lo2 = lo * lo;
    const double lo3 = lo2 * lo;
    const double hi2 = hi * hi;
    const double out0 = h_up * (hi2 - lo2) * 0.5;
    const double out1 = h_up * (hi2 * hi - lo3) / 3.0;

    // Reflected part, 0 <= eta <= sqrt(d).
    const double rhi = maxd(mind(root_up, v_up + s), lo);
    const double rhi2 = rhi * rhi;
    const double ref0 = h_up * (rhi2 - lo2) * 0.5;
    const double ref1 = h_up * (rhi2 * rhi - lo3) / 3.0;

    // Transmitted downstream particles, eta >= sqrt(-d), landing at
    // xi = -sqrt(eta^2 + d).
    const double tlo = maxd(0.0 - v_dn - s, root_dn);
    const double thi = maxd(0.0 - v_dn + s, tlo);
    const double tlo2 = tlo * tlo;
    const double thi2 = thi * thi;
    const double a2 = maxd(tlo2 + d, 0.0);
    const double b2 = maxd(thi2 + d, 0.0);
    const double tr0 = h_dn * (thi2 - tlo2) * 0.5;
    const double tr1 = h_dn * (b2 * std::sqrt(b2) - a2 * std::sqrt(a2)) / 3.0;

    return {out0 - ref0 - tr0, out1 + ref1 + tr1};
}

}  // namespace pipeflow::detail
