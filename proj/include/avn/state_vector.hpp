#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "avn/errors.hpp"

namespace avn {

using cplx = std::complex<double>;

inline constexpr double kTol = 1e-12;

// Dense state vector over up to six qubits.
//
// Index convention: qubit 1 is the most significant bit of the amplitude
// index, so |b1 b2 ... bn> sits at index b1*2^(n-1) + ... + bn. The 0-qubit
// state (a single amplitude) is allowed as the tensor-product unit.
//
// States are normalized on construction; unnormalized intermediates (e.g.
// projections before renormalization) must be created through `raw` and are
// flagged as such.
class StateVector {
public:
    static constexpr int kMaxQubits = 6;

    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    // Unnormalized intermediate; skips the normalization check only.
    static StateVector raw(int n_qubits, std::vector<cplx> amplitudes);

    // Computational basis state |index>.
    static StateVector basis(int n_qubits, std::size_t index);

    // The 0-qubit unit state, identity of the tensor product.
    static StateVector scalar_unit();

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amps() const { return amps_; }
    cplx amp(std::size_t i) const { return amps_[i]; }
    bool is_normalized() const { return normalized_; }

    double norm() const;

    // Normalized copy; NumericError on a (near-)zero vector.
    StateVector normalized() const;

private:
    StateVector(int n_qubits, std::vector<cplx> amplitudes, bool normalized, bool check_norm);

    int n_qubits_;
    std::vector<cplx> amps_;
    bool normalized_;
};

// <a|b>
cplx inner(const StateVector& a, const StateVector& b);

// Tensor product; a's qubits become the more significant index block.
StateVector kron(const StateVector& a, const StateVector& b);

// Bit of `index` belonging to 1-based qubit `q` in an n-qubit register.
inline int qubit_bit(std::size_t index, int q, int n) {
    return static_cast<int>((index >> (n - q)) & 1u);
}

}  // namespace avn
