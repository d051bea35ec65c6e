#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace avn::hv {

// Observable labels are plain text drawn from a closed set per system:
// single-qubit operators x_i / y_i plus the four triple products.
bool is_known_label(const std::string& label);

// +-1 value per observable.
using Assignment = std::map<std::string, int>;

struct Equation {
    std::vector<std::string> labels;  // exactly 4
    int required_product;             // +-1
};

struct ConstraintSystem {
    std::string name;  // "LHV" or "NCHV" for the built-in systems
    std::vector<Equation> equations;

    // Sorted unique labels. Enumeration order: bit i of the assignment index
    // is label i's value, bit 0 meaning +1 (so index 0 is all-+1).
    std::vector<std::string> universe() const;
};

// Value-assignment system for the four-observer correlations: one product
// equation per eigenequation, all right-hand sides -1. Labels are the six
// single-qubit observables on qubits 1,3,5 plus the four triples.
ConstraintSystem lhv_system();

// Value-assignment system for the three-qubit identities: right-hand sides
// +1,+1,+1,+1,-1. Labels are the six single-qubit observables on qubits
// 2,4,6 plus the four triples.
ConstraintSystem nchv_system();

struct EnumerationResult {
    long count;  // satisfying assignments out of 2^|universe|
    long total;
    std::vector<Assignment> witnesses;
};

// Exhaustive scan over all +-1 assignments. Throws DomainError when the
// universe exceeds 20 labels.
EnumerationResult enumerate_satisfying(const ConstraintSystem& system);

struct ParityCertificate {
    bool unsatisfiable;
    std::string reason;
};

// Unsatisfiable iff every label occurs an even number of times across the
// equations while the required products multiply to -1.
ParityCertificate parity_certificate(const ConstraintSystem& system);

struct BoundTerm {
    std::vector<std::string> labels;
    int sign;  // +-1
};

struct BoundResult {
    int max_value;
    Assignment argmax;  // lexicographically smallest maximizer, +1 before -1
};

// Maximize sum_t sign_t * prod v(label) over all +-1 assignments, optionally
// restricted to assignments satisfying `constraint`.
BoundResult classical_bound(const std::vector<BoundTerm>& terms,
                            const std::optional<Equation>& constraint);

// Same search for the minimum.
BoundResult classical_min(const std::vector<BoundTerm>& terms,
                          const std::optional<Equation>& constraint);

// The O and O' expressions as bound terms, and the analyzer-enforced
// constraint (product of the four triples = -1).
std::vector<BoundTerm> o_terms();
std::vector<BoundTerm> oprime_terms();
Equation triple_product_constraint();

}  // namespace avn::hv
