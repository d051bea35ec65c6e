#include "avn/verifier.hpp"

#include <cmath>

#include "avn/kernels.hpp"

namespace avn::verifier {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Axes3 = std::array<PauliAxis, 3>;

constexpr std::array<Axes3, 4> kTripleAxes = {{
    {PauliAxis::X, PauliAxis::Y, PauliAxis::Y},
    {PauliAxis::Y, PauliAxis::X, PauliAxis::Y},
    {PauliAxis::Y, PauliAxis::Y, PauliAxis::X},
    {PauliAxis::X, PauliAxis::X, PauliAxis::X},
}};

std::string triple_label(const Axes3& axes) {
    std::string s;
    const int names[3] = {2, 4, 6};
    for (int i = 0; i < 3; ++i) {
        s += axis_char(axes[i]);
        s += std::to_string(names[i]);
    }
    return s;
}

// Single-qubit operator for Alice/Bob/Charlie, e.g. x1, y3, x5.
PauliString local_135(int qubit, PauliAxis axis) {
    return PauliString(6, PauliString::make(6, {{qubit, axis}}).factors(),
                       std::string(1, axis_char(axis)) + std::to_string(qubit));
}

}  // namespace

StateVector build_singlet() {
    return StateVector(2, {cplx{}, cplx{kInvSqrt2, 0.0}, cplx{-kInvSqrt2, 0.0}, cplx{}});
}

StateVector build_psi() {
    const StateVector s = build_singlet();
    return kron(kron(s, s), s);
}

std::array<PauliString, 4> triples_246() {
    std::array<PauliString, 4> out = {
        PauliString::identity(3), PauliString::identity(3),
        PauliString::identity(3), PauliString::identity(3)};
    for (int t = 0; t < 4; ++t) {
        const Axes3& a = kTripleAxes[t];
        out[t] = PauliString(3, {a[0], a[1], a[2]}, triple_label(a));
    }
    return out;
}

std::array<PauliString, 4> triples_246_embedded() {
    std::array<PauliString, 4> out = {
        PauliString::identity(6), PauliString::identity(6),
        PauliString::identity(6), PauliString::identity(6)};
    for (int t = 0; t < 4; ++t) {
        const Axes3& a = kTripleAxes[t];
        out[t] = PauliString(6, PauliString::make(6, {{2, a[0]}, {4, a[1]}, {6, a[2]}}).factors(),
                             triple_label(a));
    }
    return out;
}

std::vector<EigenEquation> eigen_system() {
    const auto triples = triples_246_embedded();
    // Alice/Bob/Charlie axes paired with each triple.
    const std::array<Axes3, 4> locals = kTripleAxes;  // same patterns on qubits 1,3,5
    std::vector<EigenEquation> eqs;
    for (int t = 0; t < 4; ++t) {
        const Axes3& la = locals[t];
        EigenEquation eq;
        eq.factors = {triples[t], local_135(1, la[0]), local_135(3, la[1]), local_135(5, la[2])};
        eq.label = triples[t].label() + " . " + eq.factors[1].label() + " . " +
                   eq.factors[2].label() + " . " + eq.factors[3].label();
        eq.eigenvalue = -1.0;
        eqs.push_back(std::move(eq));
    }
    EigenEquation last;
    last.factors = {triples[3], triples[0], triples[1], triples[2]};
    last.label = triples[3].label() + " . " + triples[0].label() + " . " + triples[1].label() +
                 " . " + triples[2].label();
    last.eigenvalue = -1.0;
    eqs.push_back(std::move(last));
    return eqs;
}

StateVector apply_equation(const EigenEquation& eq, const StateVector& s) {
    StateVector acc = s;
    for (auto it = eq.factors.rbegin(); it != eq.factors.rend(); ++it) {
        acc = apply_pauli(*it, acc);
    }
    return acc;
}

std::vector<EigenCheckResult> verify_eigenequations(const StateVector& state) {
    if (state.n_qubits() != 6) throw DimensionError("verify_eigenequations: need a 6-qubit state");
    std::vector<EigenCheckResult> out;
    for (const EigenEquation& eq : eigen_system()) {
        const StateVector op_s = apply_equation(eq, state);
        std::vector<cplx> diff = op_s.amps();
        kern::active().axpy(cplx{-eq.eigenvalue, 0.0}, state.amps().data(), diff.data(), diff.size());
        const double residual = std::sqrt(kern::active().norm_sq(diff.data(), diff.size()));
        out.push_back({eq.label, eq.eigenvalue, residual});
    }
    return out;
}

std::vector<IdentityCheckResult> verify_identities() {
    const auto triples = triples_246();
    std::vector<IdentityCheckResult> out;
    const CMatrix ident = CMatrix::identity(8);
    for (int t = 0; t < 4; ++t) {
        const Axes3& a = kTripleAxes[t];
        const PauliString singles[3] = {
            PauliString(3, {a[0], PauliAxis::Id, PauliAxis::Id}, std::string(1, axis_char(a[0])) + "2"),
            PauliString(3, {PauliAxis::Id, a[1], PauliAxis::Id}, std::string(1, axis_char(a[1])) + "4"),
            PauliString(3, {PauliAxis::Id, PauliAxis::Id, a[2]}, std::string(1, axis_char(a[2])) + "6"),
        };
        const CMatrix lhs = pauli_matrix(triples[t]) * pauli_matrix(singles[0]) *
                            pauli_matrix(singles[1]) * pauli_matrix(singles[2]);
        const std::string label = triples[t].label() + " . " + singles[0].label() + " . " +
                                  singles[1].label() + " . " + singles[2].label() + " = I";
        out.push_back({label, max_abs_diff(lhs, ident)});
    }
    const CMatrix prod = pauli_matrix(triples[3]) * pauli_matrix(triples[0]) *
                         pauli_matrix(triples[1]) * pauli_matrix(triples[2]);
    const std::string label = triples[3].label() + " . " + triples[0].label() + " . " +
                              triples[1].label() + " . " + triples[2].label() + " = -I";
    out.push_back({label, max_abs_diff(prod, -ident)});
    return out;
}

MerminOperator mermin_O() {
    MerminOperator op;
    op.label = "O";
    op.n_qubits = 6;
    auto eqs = eigen_system();
    for (int t = 0; t < 4; ++t) {
        op.terms.push_back({+1, eqs[t].factors, eqs[t].label});
    }
    return op;
}

MerminOperator mermin_Oprime() {
    MerminOperator op;
    op.label = "O'";
    op.n_qubits = 3;
    const auto triples = triples_246();
    for (int t = 0; t < 4; ++t) {
        const Axes3& a = kTripleAxes[t];
        MerminTerm term;
        term.coefficient = +1;
        term.factors = {
            triples[t],
            PauliString(3, {a[0], PauliAxis::Id, PauliAxis::Id}, std::string(1, axis_char(a[0])) + "2"),
            PauliString(3, {PauliAxis::Id, a[1], PauliAxis::Id}, std::string(1, axis_char(a[1])) + "4"),
            PauliString(3, {PauliAxis::Id, PauliAxis::Id, a[2]}, std::string(1, axis_char(a[2])) + "6"),
        };
        term.label = term.factors[0].label() + " . " + term.factors[1].label() + " . " +
                     term.factors[2].label() + " . " + term.factors[3].label();
        op.terms.push_back(std::move(term));
    }
    return op;
}

namespace {

double check_real(cplx v) {
    if (std::abs(v.imag()) > kTol) {
        throw NumericError("expectation: imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

}  // namespace

double expectation(const MerminOperator& op, const StateVector& s) {
    if (op.n_qubits != s.n_qubits()) throw DimensionError("expectation: qubit count mismatch");
    cplx acc{};
    for (const MerminTerm& term : op.terms) {
        StateVector ts = s;
        for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
            ts = apply_pauli(*it, ts);
        }
        acc += static_cast<double>(term.coefficient) * inner(s, ts);
    }
    return check_real(acc);
}

CMatrix term_matrix(const MerminTerm& term) {
    CMatrix m = pauli_matrix(term.factors.front());
    for (std::size_t i = 1; i < term.factors.size(); ++i) {
        m = m * pauli_matrix(term.factors[i]);
    }
    return m;
}

double expectation(const MerminOperator& op, const DensityMatrix& rho) {
    if (op.n_qubits != rho.n_qubits()) throw DimensionError("expectation: qubit count mismatch");
    // Materialize O and contract against the density matrix: for Hermitian
    // rho, Tr(rho M) = sum_ij conj(rho_ij) M_ij.
    CMatrix m(rho.dim());
    for (const MerminTerm& term : op.terms) {
        const CMatrix tm = term_matrix(term);
        kern::active().axpy(cplx{static_cast<double>(term.coefficient), 0.0}, tm.data(), m.data(),
                            m.size());
    }
    return check_real(kern::active().dot_conj(rho.entries().data(), m.data(), m.size()));
}

DensityMatrix noisy_singlet(NoiseParams p) {
    if (!(p.fidelity >= 0.0 && p.fidelity <= 1.0)) {
        throw DomainError("fidelity must lie in [0,1]");
    }
    CMatrix quarter_identity = cplx{0.25, 0.0} * CMatrix::identity(4);
    const DensityMatrix maximally_mixed(2, std::move(quarter_identity));
    return dm_mix({{p.fidelity, dm_from_state(build_singlet())}, {1.0 - p.fidelity, maximally_mixed}});
}

double expectation_O_noisy(NoiseParams p) {
    return expectation_O_noisy(p.fidelity, p.fidelity, p.fidelity);
}

double expectation_O_noisy(double f12, double f34, double f56) {
    const DensityMatrix rho = dm_kron(dm_kron(noisy_singlet({f12}), noisy_singlet({f34})), noisy_singlet({f56}));
    return expectation(mermin_O(), rho);
}

double violation_threshold(double bound) {
    if (!(bound > 0.0 && bound <= 4.0)) throw DomainError("bound must lie in (0,4]");
    auto magnitude = [](double f) { return std::abs(expectation_O_noisy({f})); };
    double lo = 0.0, hi = 1.0;
    if (magnitude(hi) < bound - 1e-9) throw DomainError("bound not bracketed on [0,1]");
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (magnitude(mid) < bound ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace avn::verifier
