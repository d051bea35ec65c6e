#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "avn/state_vector.hpp"

namespace avn {

// Dense row-major complex matrix. Used for operator materialization and as
// the storage behind DensityMatrix; carries no physical invariants itself.
class CMatrix {
public:
    explicit CMatrix(std::size_t dim) : dim_(dim), m_(dim * dim, cplx{}) {}

    static CMatrix identity(std::size_t dim) {
        CMatrix out(dim);
        for (std::size_t i = 0; i < dim; ++i) out.at(i, i) = 1.0;
        return out;
    }

    std::size_t dim() const { return dim_; }
    cplx& at(std::size_t r, std::size_t c) { return m_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
    const cplx* data() const { return m_.data(); }
    cplx* data() { return m_.data(); }
    std::size_t size() const { return m_.size(); }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator-() const;
    friend CMatrix operator*(cplx s, const CMatrix& m);

    // A * v
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

private:
    std::size_t dim_;
    std::vector<cplx> m_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// Hermitian, unit-trace, positive-semidefinite matrix over n qubits.
// Invariants are verified on construction (PSD up to -1e-10 on eigenvalues,
// checked via an LDL^H factorization).
class DensityMatrix {
public:
    DensityMatrix(int n_qubits, CMatrix entries);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return m_.dim(); }
    const CMatrix& entries() const { return m_; }

private:
    int n_qubits_;
    CMatrix m_;
};

// |s><s|
DensityMatrix dm_from_state(const StateVector& s);

// Convex mixture; weights must be nonnegative and sum to 1 within 1e-12.
DensityMatrix dm_mix(const std::vector<std::pair<double, DensityMatrix>>& parts);

DensityMatrix dm_kron(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace avn
