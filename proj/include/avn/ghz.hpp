#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avn/pauli.hpp"
#include "avn/verifier.hpp"

namespace avn::ghz {

// One of the eight maximally entangled three-qubit states Phi_k^+-.
// Ordering everywhere: k ascending, + before -, i.e. linear index 2k + (sign<0).
struct GhzIndex {
    int k;     // 0..3
    int sign;  // +1 or -1

    int linear() const { return 2 * k + (sign < 0 ? 1 : 0); }
    static GhzIndex from_linear(int i) { return {i / 2, i % 2 == 0 ? +1 : -1}; }
    bool operator==(const GhzIndex&) const = default;
};

std::string label_utf8(GhzIndex g);   // e.g. Phi-zero-plus with subscripts
std::string label_ascii(GhzIndex g);  // "Phi0+"

// The eight GHZ states as an orthonormal 3-qubit basis, in linear order.
std::vector<StateVector> ghz_basis();

// Column order of the eigenvalue table: x2x4x6, x2y4y6, y2x4y6, y2y4x6.
extern const std::array<const char*, 4> kTableColumns;

// Joint eigenvalues of the four triple products on each GHZ basis state,
// computed (not transcribed) and verified to be exact eigenstates. Every row
// multiplies to -1.
std::array<std::array<int, 4>, 8> ghz_eigen_table();

// |Psi> expanded over GHZ pairs: coefficient (g on qubits 2,4,6; h on qubits
// 1,3,5) of the reordered state. For the three-singlet state, exactly eight
// coefficients are nonzero, each of magnitude 1/sqrt(8).
struct SwapDecomposition {
    std::array<std::array<cplx, 8>, 8> c;  // [g246.linear()][g135.linear()]

    double norm_sq() const;
    std::vector<std::pair<GhzIndex, GhzIndex>> support(double tol = 1e-12) const;
};

SwapDecomposition decompose_swap(const StateVector& psi);

// Inverse of decompose_swap, including the qubit un-permutation.
StateVector reconstruct_swap(const SwapDecomposition& d);

enum class AnalyzerOutcome { Phi0Plus, Phi0Minus, Fail };

std::string outcome_name(AnalyzerOutcome o);

struct MeasurementRecord {
    std::optional<GhzIndex> ghz_outcome;      // set for per-state records
    std::optional<AnalyzerOutcome> analyzer;  // set for analyzer records
    double probability;
    // Normalized remainder on qubits 1,3,5 (or the full measured state for
    // 3-qubit inputs). Absent for the aggregated Fail record.
    std::optional<StateVector> conditional_state;
};

// Project qubits 2,4,6 of a 6-qubit state onto a GHZ outcome; the conditional
// state lives on qubits 1,3,5. Throws NoSupportError below 1e-15 probability.
MeasurementRecord postselect(const StateVector& psi, GhzIndex outcome);

// The partial GHZ analyzer: identifies Phi0+ and Phi0-, aggregates the six
// unidentifiable outcomes into Fail. Accepts a 6-qubit state (measured on
// qubits 2,4,6) or a 3-qubit state (measured directly).
std::vector<MeasurementRecord> analyzer_measure(const StateVector& psi);

// Tensor product of single-qubit X/Y eigenstates with the given eigenvalues.
// Conventions: |+> = (|0>+|1>)/sqrt2, |R> = (|0>+i|1>)/sqrt2.
StateVector product_eigenstate(const std::array<PauliAxis, 3>& axes,
                               const std::array<int, 3>& signs);

// One run of the identity-verification strategy: prepare the product
// eigenstate for identity `identity_index` (1..4 selecting the axis pattern
// XYY, YXY, YYX, XXX), expand in the GHZ basis, and read the tested triple
// product off the support.
struct ContextualityRun {
    int identity_index;
    std::array<int, 3> signs;
    std::string triple_label;
    std::vector<GhzIndex> support;
    int triple_value;                  // shared eigenvalue across the support
    bool identity_holds;               // triple_value == product of signs
    double identifiable_probability;   // weight on Phi0+-
};

ContextualityRun contextuality_run(int identity_index, const std::array<int, 3>& signs);

// One simulated experiment shot.
struct ShotResult {
    int setting;  // 1..4
    AnalyzerOutcome debbie_outcome;
    std::array<int, 3> local_values;  // Alice, Bob, Charlie
    bool accepted;
    std::optional<int> product;  // defined only when accepted
};

struct SampleStats {
    double estimate;   // of <O>
    double std_error;
    long accepted;
    long shots_total;
    double acceptance_fraction;
    std::vector<ShotResult> shots;
};

// Monte-Carlo simulation of the post-selected experiment on three noisy
// singlets. Policies: "round-robin" cycles the four settings; "fixed:k"
// (k in 1..4) keeps one. Deterministic for a fixed seed; shots use derived
// per-shot seeds so the sequence is independent of evaluation order.
SampleStats sample_shots(long n, std::uint64_t seed, verifier::NoiseParams noise,
                         std::string_view policy = "round-robin");

}  // namespace avn::ghz
