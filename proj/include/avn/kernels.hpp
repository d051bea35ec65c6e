#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace avn::kern {

using cplx = std::complex<double>;

// Complex-vector primitives over contiguous interleaved arrays. These are the
// arithmetic inner loops of the library; everything above them (states,
// density matrices, decompositions) is written in terms of this table.
//
// Reductions (dot_conj, norm_sq) may reassociate, so backends agree to a few
// ulps rather than bitwise. Elementwise ops (axpy, scale) and max_abs_diff use
// the same per-element formulas in every backend.
struct Ops {
    const char* name;
    // sum over i of conj(a[i]) * b[i]
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
    // sum over i of |a[i]|^2
    double (*norm_sq)(const cplx* a, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // x[i] *= alpha
    void (*scale)(cplx alpha, cplx* x, std::size_t n);
    // max over i of |a[i] - b[i]|
    double (*max_abs_diff)(const cplx* a, const cplx* b, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Ops* avx2_ops();

// Active backend. Defaults to the best available; AVN_KERNEL=scalar|avx2 in
// the environment overrides the choice at startup.
const Ops& active();

// Force a backend by name. Returns false (and leaves the selection unchanged)
// if the backend is unavailable.
bool select(std::string_view name);

// All backends usable on this machine, scalar first.
std::vector<const Ops*> available();

}  // namespace avn::kern
