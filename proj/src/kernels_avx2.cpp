#ifdef AVN_HAVE_AVX2

#include "avn/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace avn::kern {

namespace {

// One __m256d holds two interleaved complexes: [re0, im0, re1, im1].

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx dot_conj_avx2(const cplx* ac, const cplx* bc, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(ac);
    const double* b = reinterpret_cast<const double*>(bc);
    const std::size_t n2 = n & ~std::size_t(1);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    for (std::size_t i = 0; i < n2; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb = _mm256_loadu_pd(b + 2 * i);
        // lanes [ar*br, ai*bi, ...] -> re; [ar*bi, -ai*br, ...] -> im
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d vb_sw = _mm256_permute_pd(vb, 0b0101);
        acc_im = _mm256_fmadd_pd(va, _mm256_mul_pd(vb_sw, sign), acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (std::size_t i = n2; i < n; ++i) {
        const double ar = ac[i].real(), ai = ac[i].imag();
        const double br = bc[i].real(), bi = bc[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm_sq_avx2(const cplx* ac, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(ac);
    const std::size_t nd = 2 * n;
    const std::size_t nd4 = nd & ~std::size_t(3);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < nd4; i += 4) {
        const __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (std::size_t i = nd4; i < nd; ++i) s += a[i] * a[i];
    return s;
}

void axpy_avx2(cplx alpha, const cplx* xc, cplx* yc, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    const double* x = reinterpret_cast<const double*>(xc);
    double* y = reinterpret_cast<double*>(yc);
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    const std::size_t nd4 = (2 * n) & ~std::size_t(3);
    for (std::size_t i = 0; i < nd4; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vx_sw = _mm256_permute_pd(vx, 0b0101);
        // even lanes ar*xr - ai*xi, odd lanes ar*xi + ai*xr
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vx, var), _mm256_mul_pd(vx_sw, vai));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (std::size_t i = nd4 / 2; i < n; ++i) {
        const double xr = xc[i].real(), xi = xc[i].imag();
        yc[i] = cplx(yc[i].real() + (ar * xr - ai * xi), yc[i].imag() + (ar * xi + ai * xr));
    }
}

void scale_avx2(cplx alpha, cplx* xc, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    double* x = reinterpret_cast<double*>(xc);
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    const std::size_t nd4 = (2 * n) & ~std::size_t(3);
    for (std::size_t i = 0; i < nd4; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vx_sw = _mm256_permute_pd(vx, 0b0101);
        _mm256_storeu_pd(x + i, _mm256_addsub_pd(_mm256_mul_pd(vx, var), _mm256_mul_pd(vx_sw, vai)));
    }
    for (std::size_t i = nd4 / 2; i < n; ++i) {
        const double xr = xc[i].real(), xi = xc[i].imag();
        xc[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

double max_abs_diff_avx2(const cplx* ac, const cplx* bc, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(ac);
    const double* b = reinterpret_cast<const double*>(bc);
    const std::size_t n2 = n & ~std::size_t(1);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n2; i += 2) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i));
        const __m256d sq = _mm256_mul_pd(d, d);
        // per-complex |d|^2 replicated across the pair of lanes
        const __m256d mag2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101));
        acc = _mm256_max_pd(acc, mag2);
    }
    double m = hmax(acc);
    for (std::size_t i = n2; i < n; ++i) {
        const double dr = ac[i].real() - bc[i].real();
        const double di = ac[i].imag() - bc[i].imag();
        const double mag2 = dr * dr + di * di;
        if (mag2 > m) m = mag2;
    }
    return std::sqrt(m);
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static constexpr Ops ops{
        "avx2", dot_conj_avx2, norm_sq_avx2, axpy_avx2, scale_avx2, max_abs_diff_avx2,
    };
    return &ops;
}

}  // namespace avn::kern

#endif  // AVN_HAVE_AVX2
