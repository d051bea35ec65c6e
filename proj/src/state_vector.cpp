#include "avn/state_vector.hpp"

#include <cmath>
#include <string>

#include "avn/kernels.hpp"

namespace avn {

namespace {

void check_shape(int n_qubits, std::size_t len) {
    if (n_qubits < 0 || n_qubits > StateVector::kMaxQubits) {
        throw CapacityError("state vector supports 0.." + std::to_string(StateVector::kMaxQubits) +
                            " qubits, got " + std::to_string(n_qubits));
    }
    if (len != (std::size_t{1} << n_qubits)) {
        throw DimensionError("amplitude count " + std::to_string(len) + " does not match 2^" +
                             std::to_string(n_qubits));
    }
}

void check_finite(const std::vector<cplx>& amps) {
    for (const cplx& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NumericError("non-finite amplitude");
        }
    }
}

}  // namespace

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes, bool normalized, bool check_norm)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)), normalized_(normalized) {
    check_shape(n_qubits_, amps_.size());
    check_finite(amps_);
    if (check_norm) {
        const double n = norm();
        if (std::abs(n - 1.0) > kTol) {
            throw NumericError("state not normalized: |norm - 1| = " + std::to_string(std::abs(n - 1.0)));
        }
    }
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : StateVector(n_qubits, std::move(amplitudes), true, true) {}

StateVector StateVector::raw(int n_qubits, std::vector<cplx> amplitudes) {
    return StateVector(n_qubits, std::move(amplitudes), false, false);
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx{});
    amps.at(index) = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::scalar_unit() { return StateVector(0, {cplx{1.0, 0.0}}); }

double StateVector::norm() const {
    return std::sqrt(kern::active().norm_sq(amps_.data(), amps_.size()));
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n < 1e-15) throw NumericError("cannot normalize a zero vector");
    std::vector<cplx> amps = amps_;
    kern::active().scale(cplx{1.0 / n, 0.0}, amps.data(), amps.size());
    return StateVector(n_qubits_, std::move(amps), true, false);
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) throw DimensionError("inner product: qubit count mismatch");
    return kern::active().dot_conj(a.amps().data(), b.amps().data(), a.dim());
}

StateVector kron(const StateVector& a, const StateVector& b) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > StateVector::kMaxQubits) {
        throw CapacityError("tensor product would need " + std::to_string(n) + " qubits");
    }
    std::vector<cplx> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a.amp(i) * b.amp(j);
        }
    }
    const bool normalized = a.is_normalized() && b.is_normalized();
    return normalized ? StateVector(n, std::move(out)) : StateVector::raw(n, std::move(out));
}

}  // namespace avn
