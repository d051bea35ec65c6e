#include "avn/kernels.hpp"

#include <cmath>

namespace avn::kern {

namespace {

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm_sq_scalar(const cplx* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return acc;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

void scale_scalar(cplx alpha, cplx* x, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

double max_abs_diff_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        const double mag2 = dr * dr + di * di;
        if (mag2 > m) m = mag2;
    }
    return std::sqrt(m);
}

}  // namespace

const Ops& scalar_ops() {
    static constexpr Ops ops{
        "scalar", dot_conj_scalar, norm_sq_scalar, axpy_scalar, scale_scalar, max_abs_diff_scalar,
    };
    return ops;
}

}  // namespace avn::kern
