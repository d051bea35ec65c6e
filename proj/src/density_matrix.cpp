#include "avn/density_matrix.hpp"

#include <cmath>
#include <string>

#include "avn/kernels.hpp"

namespace avn {

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    const std::size_t d = dim_;
    CMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx{}) continue;
            kern::active().axpy(aik, rhs.data() + k * d, out.data() + i * d, d);
        }
    }
    return out;
}

CMatrix CMatrix::operator-() const {
    CMatrix out = *this;
    kern::active().scale(cplx{-1.0, 0.0}, out.data(), out.size());
    return out;
}

CMatrix operator*(cplx s, const CMatrix& m) {
    CMatrix out = m;
    kern::active().scale(s, out.data(), out.size());
    return out;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
    std::vector<cplx> out(dim_, cplx{});
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < dim_; ++j) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    CMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    out.at(i * db + k, j * db + l) = aij * b.at(k, l);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("matrix dimension mismatch");
    return kern::active().max_abs_diff(a.data(), b.data(), a.size());
}

namespace {

// Positive semidefinite up to `tol` on the eigenvalues, via LDL^H with
// zero-pivot column checks (no pivoting needed at these sizes).
bool psd_within(const CMatrix& m, double tol) {
    const std::size_t d = m.dim();
    CMatrix a = m;  // working copy, lower triangle overwritten
    std::vector<double> diag(d, 0.0);
    std::vector<std::vector<cplx>> l(d, std::vector<cplx>(d, cplx{}));
    for (std::size_t j = 0; j < d; ++j) {
        cplx djj = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            djj -= l[j][k] * std::conj(l[j][k]) * diag[k];
        }
        const double dj = djj.real();
        if (dj < -tol) return false;
        diag[j] = dj;
        for (std::size_t i = j + 1; i < d; ++i) {
            cplx v = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l[i][k] * std::conj(l[j][k]) * diag[k];
            if (std::abs(dj) <= tol) {
                // semidefinite: a vanishing pivot requires a vanishing column
                if (std::abs(v) > std::sqrt(tol)) return false;
                l[i][j] = cplx{};
            } else {
                l[i][j] = v / dj;
            }
        }
    }
    return true;
}

void validate(int n_qubits, const CMatrix& m) {
    if (n_qubits < 0 || n_qubits > StateVector::kMaxQubits) {
        throw CapacityError("density matrix supports 0..6 qubits");
    }
    if (m.dim() != (std::size_t{1} << n_qubits)) {
        throw DimensionError("density matrix dimension does not match qubit count");
    }
    double herm_dev = 0.0;
    cplx tr{};
    for (std::size_t i = 0; i < m.dim(); ++i) {
        tr += m.at(i, i);
        for (std::size_t j = i; j < m.dim(); ++j) {
            herm_dev = std::max(herm_dev, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
        }
    }
    if (herm_dev > kTol) throw NumericError("density matrix not Hermitian: dev " + std::to_string(herm_dev));
    if (std::abs(tr - cplx{1.0, 0.0}) > kTol) throw NumericError("density matrix trace != 1");
    if (!psd_within(m, 1e-10)) throw NumericError("density matrix not positive semidefinite");
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, CMatrix entries) : n_qubits_(n_qubits), m_(std::move(entries)) {
    validate(n_qubits_, m_);
}

DensityMatrix dm_from_state(const StateVector& s) {
    CMatrix m(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            m.at(i, j) = s.amp(i) * std::conj(s.amp(j));
        }
    }
    return DensityMatrix(s.n_qubits(), std::move(m));
}

DensityMatrix dm_mix(const std::vector<std::pair<double, DensityMatrix>>& parts) {
    if (parts.empty()) throw DomainError("dm_mix: empty mixture");
    double wsum = 0.0;
    for (const auto& [w, dm] : parts) {
        if (w < 0.0) throw DomainError("dm_mix: negative weight");
        if (dm.n_qubits() != parts.front().second.n_qubits()) {
            throw DimensionError("dm_mix: qubit count mismatch");
        }
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > kTol) {
        throw DomainError("dm_mix: weights sum to " + std::to_string(wsum) + ", expected 1");
    }
    CMatrix acc(parts.front().second.dim());
    for (const auto& [w, dm] : parts) {
        kern::active().axpy(cplx{w, 0.0}, dm.entries().data(), acc.data(), acc.size());
    }
    return DensityMatrix(parts.front().second.n_qubits(), std::move(acc));
}

DensityMatrix dm_kron(const DensityMatrix& a, const DensityMatrix& b) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > StateVector::kMaxQubits) throw CapacityError("dm_kron: capacity exceeded");
    return DensityMatrix(n, kron(a.entries(), b.entries()));
}

}  // namespace avn
