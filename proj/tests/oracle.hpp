// Test-only oracles: dense matrix construction and contraction written
// independently of the library's permutation-based operator application, so
// expected values are frozen from a second route.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "avn/pauli.hpp"
#include "avn/state_vector.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat single(avn::PauliAxis a) {
    const cplx i{0.0, 1.0};
    switch (a) {
        case avn::PauliAxis::Id: return {{1, 0}, {0, 1}};
        case avn::PauliAxis::X: return {{0, 1}, {1, 0}};
        case avn::PauliAxis::Y: return {{0, -i}, {i, 0}};
        default: return {{1, 0}, {0, -1}};
    }
}

inline Mat kron(const Mat& a, const Mat& b) {
    const std::size_t na = a.size(), nb = b.size();
    Mat out(na * nb, std::vector<cplx>(na * nb, cplx{}));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    return out;
}

inline Mat matrix_of(const avn::PauliString& p) {
    Mat m = single(p.factors().front());
    for (std::size_t q = 1; q < p.factors().size(); ++q) m = kron(m, single(p.factors()[q]));
    return m;
}

inline std::vector<cplx> matvec(const Mat& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size(), cplx{});
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline cplx bra_op_ket(const std::vector<cplx>& s, const Mat& m) {
    const std::vector<cplx> ms = matvec(m, s);
    cplx acc{};
    for (std::size_t i = 0; i < s.size(); ++i) acc += std::conj(s[i]) * ms[i];
    return acc;
}

// Haar-ish random normalized state: complex normal amplitudes, normalized.
inline avn::StateVector random_state(int n_qubits, std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (cplx& a : amps) a = cplx{gauss(eng), gauss(eng)};
    double norm2 = 0.0;
    for (const cplx& a : amps) norm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amps) a *= inv;
    return avn::StateVector::raw(n_qubits, std::move(amps)).normalized();
}

inline avn::PauliString random_pauli(int n_qubits, std::mt19937_64& eng) {
    std::uniform_int_distribution<int> axis(0, 3);
    std::vector<avn::PauliAxis> f(n_qubits);
    for (auto& a : f) a = static_cast<avn::PauliAxis>(axis(eng));
    return avn::PauliString(n_qubits, std::move(f));
}

}  // namespace oracle
