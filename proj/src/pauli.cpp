#include "avn/pauli.hpp"

#include <bit>
#include <cmath>

namespace avn {

namespace {

// Bit masks describing a string's action on amplitude indices: X and Y flip
// the qubit's bit; Y and Z pick up a sign on set bits; each Y contributes one
// factor of i.
struct Action {
    std::size_t flip = 0;
    std::size_t sign = 0;  // ymask | zmask
    int y_count = 0;
};

Action action_of(const PauliString& p) {
    Action a;
    const int n = p.n_qubits();
    for (int q = 1; q <= n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - q);
        switch (p.factor(q)) {
            case PauliAxis::Id:
                break;
            case PauliAxis::X:
                a.flip |= bit;
                break;
            case PauliAxis::Y:
                a.flip |= bit;
                a.sign |= bit;
                ++a.y_count;
                break;
            case PauliAxis::Z:
                a.sign |= bit;
                break;
        }
    }
    return a;
}

// v * i^k, exact.
cplx mul_unit_phase(cplx v, int k) {
    switch (k & 3) {
        case 0: return v;
        case 1: return {-v.imag(), v.real()};
        case 2: return {-v.real(), -v.imag()};
        default: return {v.imag(), -v.real()};
    }
}

// Phase of column i: i^y_count * (-1)^popcount(i & sign), encoded as a power of i.
int phase_power(const Action& a, std::size_t i) {
    return a.y_count + 2 * (std::popcount(i & a.sign) & 1);
}

std::string default_label(const std::vector<PauliAxis>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] == PauliAxis::Id) continue;
        s += axis_char(factors[i]);
        s += std::to_string(i + 1);
    }
    return s.empty() ? "I" : s;
}

}  // namespace

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::Id: return 'i';
        case PauliAxis::X: return 'x';
        case PauliAxis::Y: return 'y';
        default: return 'z';
    }
}

PauliString::PauliString(int n_qubits, std::vector<PauliAxis> factors)
    : PauliString(n_qubits, std::move(factors), "") {
    label_ = default_label(factors_);
}

PauliString::PauliString(int n_qubits, std::vector<PauliAxis> factors, std::string label)
    : n_qubits_(n_qubits), factors_(std::move(factors)), label_(std::move(label)) {
    if (n_qubits_ < 1 || n_qubits_ > StateVector::kMaxQubits) {
        throw CapacityError("Pauli string supports 1..6 qubits");
    }
    if (factors_.size() != static_cast<std::size_t>(n_qubits_)) {
        throw DimensionError("Pauli string factor count does not match qubit count");
    }
}

PauliString PauliString::make(int n_qubits, const std::vector<std::pair<int, PauliAxis>>& placed) {
    std::vector<PauliAxis> f(n_qubits, PauliAxis::Id);
    for (const auto& [q, axis] : placed) {
        if (q < 1 || q > n_qubits) throw DimensionError("Pauli factor position out of range");
        f[q - 1] = axis;
    }
    return PauliString(n_qubits, std::move(f));
}

PauliString PauliString::identity(int n_qubits) {
    return PauliString(n_qubits, std::vector<PauliAxis>(n_qubits, PauliAxis::Id));
}

bool PauliString::is_identity() const {
    for (PauliAxis a : factors_) {
        if (a != PauliAxis::Id) return false;
    }
    return true;
}

StateVector apply_pauli(const PauliString& p, const StateVector& s) {
    if (p.n_qubits() != s.n_qubits()) throw DimensionError("apply_pauli: qubit count mismatch");
    const Action a = action_of(p);
    std::vector<cplx> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        out[i ^ a.flip] = mul_unit_phase(s.amp(i), phase_power(a, i));
    }
    return s.is_normalized() ? StateVector(s.n_qubits(), std::move(out))
                             : StateVector::raw(s.n_qubits(), std::move(out));
}

CMatrix pauli_matrix(const PauliString& p) {
    const Action a = action_of(p);
    const std::size_t dim = std::size_t{1} << p.n_qubits();
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i ^ a.flip, i) = mul_unit_phase(cplx{1.0, 0.0}, phase_power(a, i));
    }
    return m;
}

std::pair<cplx, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw DimensionError("pauli_mul: qubit count mismatch");
    // sigma_a * sigma_b = phase * sigma_c per qubit; phases multiply.
    auto single = [](PauliAxis u, PauliAxis v) -> std::pair<int, PauliAxis> {
        if (u == PauliAxis::Id) return {0, v};
        if (v == PauliAxis::Id) return {0, u};
        if (u == v) return {0, PauliAxis::Id};
        // cyclic x->y->z->x gives +i, anticyclic -i (power 3)
        const int ui = static_cast<int>(u), vi = static_cast<int>(v);  // x=1,y=2,z=3
        const bool cyclic = (vi - ui + 3) % 3 == 1;
        const int missing = 6 - ui - vi;  // the third axis
        return {cyclic ? 1 : 3, static_cast<PauliAxis>(missing)};
    };
    int power = 0;
    std::vector<PauliAxis> out(a.n_qubits());
    for (int q = 1; q <= a.n_qubits(); ++q) {
        auto [k, axis] = single(a.factor(q), b.factor(q));
        power += k;
        out[q - 1] = axis;
    }
    return {mul_unit_phase(cplx{1.0, 0.0}, power), PauliString(a.n_qubits(), std::move(out))};
}

namespace {

double real_with_residue_check(cplx v, const char* what) {
    if (std::abs(v.imag()) > kTol) {
        throw NumericError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

}  // namespace

double expectation(const PauliString& p, const StateVector& s) {
    const StateVector ps = apply_pauli(p, s);
    return real_with_residue_check(inner(s, ps), "expectation");
}

double expectation(const PauliString& p, const DensityMatrix& rho) {
    if (p.n_qubits() != rho.n_qubits()) throw DimensionError("expectation: qubit count mismatch");
    const Action a = action_of(p);
    // Tr(rho P) = sum_i phase(i) * rho(i, i^flip); P's column i has its only
    // entry at row i^flip.
    cplx tr{};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        tr += mul_unit_phase(rho.entries().at(i, i ^ a.flip), phase_power(a, i));
    }
    return real_with_residue_check(tr, "expectation");
}

}  // namespace avn
