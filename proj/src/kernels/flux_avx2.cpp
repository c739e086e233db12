// AVX2 variant of the interface-flux kernel. Compiled with -mavx2 only (no
// FMA) and mirrors upwind_half_flux operation for operation.

#include <immintrin.h>

#include "flux_math.hpp"
#include "pipeflow/flux_kernels.hpp"

namespace pipeflow::kernels {

namespace {

struct MomentsX4 {
    __m256d m0;
    __m256d m1;
};

inline MomentsX4 upwind_half_flux_x4(__m256d a_up, __m256d v_up, __m256d a_dn, __m256d v_dn,
                                     __m256d d, __m256d s, __m256d inv_two_s) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d three = _mm256_set1_pd(3.0);

    const __m256d h_up = _mm256_mul_pd(a_up, inv_two_s);
    const __m256d h_dn = _mm256_mul_pd(a_dn, inv_two_s);
    const __m256d root_up = _mm256_sqrt_pd(_mm256_max_pd(d, zero));
    const __m256d root_dn = _mm256_sqrt_pd(_mm256_max_pd(_mm256_sub_pd(zero, d), zero));

    const __m256d lo = _mm256_max_pd(_mm256_sub_pd(v_up, s), zero);
    const __m256d hi = _mm256_max_pd(_mm256_add_pd(v_up, s), lo);
    const __m256d lo2 = _mm256_mul_pd(lo, lo);
    const __m256d lo3 = _mm256_mul_pd(lo2, lo);
    const __m256d hi2 = _mm256_mul_pd(hi, hi);
    const __m256d out0 = _mm256_mul_pd(_mm256_mul_pd(h_up, _mm256_sub_pd(hi2, lo2)), half);
    const __m256d out1 = _mm256_div_pd(
        _mm256_mul_pd(h_up, _mm256_sub_pd(_mm256_mul_pd(hi2, hi), lo3)), three);

    const __m256d rhi = _mm256_max_pd(_mm256_min_pd(root_up, _mm256_add_pd(v_up, s)), lo);
    const __m256d rhi2 = _mm256_mul_pd(rhi, rhi);
    const __m256d ref0 = _mm256_mul_pd(_mm256_mul_pd(h_up, _mm256_sub_pd(rhi2, lo2)), half);
    const __m256d ref1 = _mm256_div_pd(
        _mm256_mul_pd(h_up, _mm256_sub_pd(_mm256_mul_pd(rhi2, rhi), lo3)), three);

    const __m256d neg_v_dn = _mm256_sub_pd(zero, v_dn);
    const __m256d tlo = _mm256_max_pd(_mm256_sub_pd(neg_v_dn, s), root_dn);
    const __m256d thi = _mm256_max_pd(_mm256_add_pd(neg_v_dn, s), tlo);
    const __m256d tlo2 = _mm256_mul_pd(tlo, tlo);
    const __m256d thi2 = _mm256_mul_pd(thi, thi);
    const __m256d a2 = _mm256_max_pd(_mm256_add_pd(tlo2, d), zero);
    const __m256d b2 = _mm256_max_pd(_mm256_add_pd(thi2, d), zero);
    const __m256d tr0 = _mm256_mul_pd(_mm256_mul_pd(h_dn, _mm256_sub_pd(thi2, tlo2)), half);
    const __m256d tr1 = _mm256_div_pd(
        _mm256_mul_pd(h_dn, _mm256_sub_pd(_mm256_mul_pd(b2, _mm256_sqrt_pd(b2)),
                                          _mm256_mul_pd(a2, _mm256_sqrt_pd(a2)))),
        three);

    return {_mm256_sub_pd(_mm256_sub_pd(out0, ref0), tr0),
            _mm256_add_pd(_mm256_add_pd(out1, ref1), tr1)};
}

}  // namespace

void interface_fluxes_avx2(double c, const FluxBatchIn& in, const FluxBatchOut& out) {
    const std::size_t n = in.jump.size();
    const double s_scalar = c * kSqrt3;
    const double inv_two_s_scalar = 1.0 / (2.0 * s_scalar);
    const __m256d s = _mm256_set1_pd(s_scalar);
    const __m256d inv_two_s = _mm256_set1_pd(inv_two_s_scalar);
    const __m256d zero = _mm256_setzero_pd();

    const double* area = in.area.data();
    const double* q = in.discharge.data();
    const double* jump = in.jump.data();

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d al = _mm256_loadu_pd(area + k);
        const __m256d ar = _mm256_loadu_pd(area + k + 1);
        const __m256d ul = _mm256_div_pd(_mm256_loadu_pd(q + k), al);
        const __m256d ur = _mm256_div_pd(_mm256_loadu_pd(q + k + 1), ar);
        const __m256d d = _mm256_loadu_pd(jump + k);

        const MomentsX4 minus = upwind_half_flux_x4(al, ul, ar, ur, d, s, inv_two_s);
        const MomentsX4 plus = upwind_half_flux_x4(ar, _mm256_sub_pd(zero, ur), al,
                                                   _mm256_sub_pd(zero, ul),
                                                   _mm256_sub_pd(zero, d), s, inv_two_s);
        _mm256_storeu_pd(out.minus_area.data() + k, minus.m0);
        _mm256_storeu_pd(out.minus_momentum.data() + k, minus.m1);
        _mm256_storeu_pd(out.plus_area.data() + k, _mm256_sub_pd(zero, plus.m0));
        _mm256_storeu_pd(out.plus_momentum.data() + k, plus.m1);
    }
    if (k < n) {
        const std::size_t rest = n - k;
        interface_fluxes_scalar(
            c, {in.area.subspan(k, rest + 1), in.discharge.subspan(k, rest + 1), in.jump.subspan(k)},
            {out.minus_area.subspan(k), out.minus_momentum.subspan(k), out.plus_area.subspan(k),
             out.plus_momentum.subspan(k)});
    }
}

}  // namespace pipeflow::kernels
