#pragma once

#include <array>
#include <string>
#include <vector>

#include "avn/pauli.hpp"

namespace avn::verifier {

// |psi-> = (|01> - |10>)/sqrt(2)
StateVector build_singlet();

// |Psi> = |psi->_12 (x) |psi->_34 (x) |psi->_56
StateVector build_psi();

// The four triple products on qubits 2,4,6, stored as a 3-qubit register, in
// the order x2y4y6, y2x4y6, y2y4x6, x2x4x6. Labels keep the 2/4/6 names.
std::array<PauliString, 4> triples_246();

// The same four operators embedded on the full 6-qubit register.
std::array<PauliString, 4> triples_246_embedded();

// One eigenequation: (product of factors) |Psi> = eigenvalue |Psi>.
// Factors act on disjoint qubits for the first four equations; the fifth is
// the composition of the four (mutually commuting) triple products, equal to
// -I on qubits 2,4,6.
struct EigenEquation {
    std::string label;
    std::vector<PauliString> factors;  // applied right to left
    double eigenvalue;                 // -1 throughout
};

std::vector<EigenEquation> eigen_system();

// Op |s> for a factored operator.
StateVector apply_equation(const EigenEquation& eq, const StateVector& s);

struct EigenCheckResult {
    std::string operator_label;
    double expected_eigenvalue;
    double residual;  // || Op s - lambda s ||_2
};

std::vector<EigenCheckResult> verify_eigenequations(const StateVector& state);

struct IdentityCheckResult {
    std::string label;
    double max_entry_deviation;  // vs +-I_8, materialized as 8x8 matrices
};

std::vector<IdentityCheckResult> verify_identities();

// Signed sum of factored Pauli products.
struct MerminTerm {
    int coefficient;  // +-1
    std::vector<PauliString> factors;
    std::string label;
};

struct MerminOperator {
    std::string label;
    int n_qubits;
    std::vector<MerminTerm> terms;
};

// O: the four 6-qubit correlation operators, all coefficients +1.
MerminOperator mermin_O();

// O': the four 3-qubit identity products (each equal to I_8 as an operator).
MerminOperator mermin_Oprime();

double expectation(const MerminOperator& op, const StateVector& s);
double expectation(const MerminOperator& op, const DensityMatrix& rho);

// Materialize one term's factor product as a matrix.
CMatrix term_matrix(const MerminTerm& term);

struct NoiseParams {
    double fidelity;  // F in [0,1]
};

// F |psi-><psi-| + (1-F) I/4
DensityMatrix noisy_singlet(NoiseParams p);

// Tr[(rho(F) (x) rho(F) (x) rho(F)) O] by full 64x64 contraction; equals -4 F^3.
double expectation_O_noisy(NoiseParams p);

// Heterogeneous extension: independent fidelities per singlet pair.
double expectation_O_noisy(double f12, double f34, double f56);

// Smallest F with |<O>| = bound, by bisection on [0,1] to 1e-9.
// Throws DomainError when the bound is not bracketed on [0,1].
double violation_threshold(double bound = 2.0);

}  // namespace avn::verifier
