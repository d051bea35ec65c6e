#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "avn/density_matrix.hpp"
#include "avn/state_vector.hpp"

namespace avn {

enum class PauliAxis : std::uint8_t { Id, X, Y, Z };

char axis_char(PauliAxis a);  // 'i', 'x', 'y', 'z'

// Tensor product of single-qubit Pauli operators. Hermitian, unitary, squares
// to the identity; the all-Id string is the identity operator.
//
// The display label defaults to the non-identity factors with their 1-based
// qubit positions ("x1y3"); builders that model operators on a relabeled
// subsystem (e.g. qubits 2,4,6 stored as a 3-qubit register) override it.
class PauliString {
public:
    PauliString(int n_qubits, std::vector<PauliAxis> factors);
    PauliString(int n_qubits, std::vector<PauliAxis> factors, std::string label);

    // Convenience: identity on n qubits with the given axes placed at
    // 1-based positions, e.g. make(6, {{2, X}, {4, Y}, {6, Y}}).
    static PauliString make(int n_qubits, const std::vector<std::pair<int, PauliAxis>>& placed);

    static PauliString identity(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliAxis>& factors() const { return factors_; }
    PauliAxis factor(int qubit) const { return factors_[qubit - 1]; }
    const std::string& label() const { return label_; }
    bool is_identity() const;

private:
    int n_qubits_;
    std::vector<PauliAxis> factors_;
    std::string label_;
};

// P |s>, computed as a phase-carrying index permutation; never materializes
// the 2^n x 2^n matrix. Exact in floating point (phases are +-1, +-i).
StateVector apply_pauli(const PauliString& p, const StateVector& s);

// Full matrix of P; entries are exactly 0, +-1 or +-i.
CMatrix pauli_matrix(const PauliString& p);

// Symbolic product a*b in the Pauli group: phase * string with
// phase in {1, i, -1, -i}.
std::pair<cplx, PauliString> pauli_mul(const PauliString& a, const PauliString& b);

// <s|P|s>; throws NumericError if the imaginary residue exceeds 1e-12.
double expectation(const PauliString& p, const StateVector& s);

// Tr(rho P), same residue check.
double expectation(const PauliString& p, const DensityMatrix& rho);

}  // namespace avn
