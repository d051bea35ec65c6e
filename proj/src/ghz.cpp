#include "avn/ghz.hpp"

#include <cmath>
#include <random>

#include "avn/kernels.hpp"

namespace avn::ghz {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Basis index of the first ket of Phi_k^+- (the second is its bit complement):
// k=0: |000>, k=1: |100>, k=2: |010>, k=3: |001>.
constexpr std::array<std::size_t, 4> kFirstKet = {0, 4, 2, 1};

// Full 6-qubit index from the (1,3,5) bits u and the (2,4,6) bits s,
// each 3 bits with the lowest-numbered qubit most significant.
inline std::size_t interleave_135_246(std::size_t u, std::size_t s) {
    return ((u >> 2) & 1) << 5 | ((s >> 2) & 1) << 4 | ((u >> 1) & 1) << 3 |
           ((s >> 1) & 1) << 2 | (u & 1) << 1 | (s & 1);
}

const std::vector<StateVector>& cached_basis() {
    static const std::vector<StateVector> basis = [] {
        std::vector<StateVector> out;
        for (int i = 0; i < 8; ++i) {
            const GhzIndex g = GhzIndex::from_linear(i);
            std::vector<cplx> amps(8, cplx{});
            amps[kFirstKet[g.k]] = kInvSqrt2;
            amps[kFirstKet[g.k] ^ 7u] = g.sign * kInvSqrt2;
            out.emplace_back(3, std::move(amps));
        }
        return out;
    }();
    return basis;
}

// Table columns as Pauli strings: x2x4x6, x2y4y6, y2x4y6, y2y4x6.
std::array<PauliString, 4> table_column_ops() {
    const auto triples = verifier::triples_246();  // x2y4y6, y2x4y6, y2y4x6, x2x4x6
    return {triples[3], triples[0], triples[1], triples[2]};
}

// Column of the table testing identity/setting k in 1..4.
constexpr int column_of_identity(int identity_index) { return identity_index % 4; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::string label_utf8(GhzIndex g) {
    static const char* sub[4] = {"₀", "₁", "₂", "₃"};
    return std::string("Φ") + sub[g.k] + (g.sign > 0 ? "⁺" : "⁻");
}

std::string label_ascii(GhzIndex g) {
    return "Phi" + std::to_string(g.k) + (g.sign > 0 ? "+" : "-");
}

std::vector<StateVector> ghz_basis() { return cached_basis(); }

const std::array<const char*, 4> kTableColumns = {"x2x4x6", "x2y4y6", "y2x4y6", "y2y4x6"};

std::array<std::array<int, 4>, 8> ghz_eigen_table() {
    static const std::array<std::array<int, 4>, 8> table = [] {
        const auto& basis = cached_basis();
        const auto columns = table_column_ops();
        std::array<std::array<int, 4>, 8> out{};
        for (int gi = 0; gi < 8; ++gi) {
            for (int t = 0; t < 4; ++t) {
                const StateVector ts = apply_pauli(columns[t], basis[gi]);
                const cplx v = inner(basis[gi], ts);
                const int rounded = v.real() >= 0.0 ? +1 : -1;
                // exact eigenstate check: || T g - v g ||
                std::vector<cplx> diff = ts.amps();
                kern::active().axpy(cplx{static_cast<double>(-rounded), 0.0},
                                    basis[gi].amps().data(), diff.data(), diff.size());
                if (std::sqrt(kern::active().norm_sq(diff.data(), diff.size())) > kTol) {
                    throw Error("internal: GHZ state " + label_ascii(GhzIndex::from_linear(gi)) +
                                " is not an eigenstate of " + columns[t].label());
                }
                out[gi][t] = rounded;
            }
            int row_product = out[gi][0] * out[gi][1] * out[gi][2] * out[gi][3];
            if (row_product != -1) {
                throw Error("internal: GHZ table row product != -1");
            }
        }
        return out;
    }();
    return table;
}

double SwapDecomposition::norm_sq() const {
    double acc = 0.0;
    for (const auto& row : c) {
        acc += kern::active().norm_sq(row.data(), row.size());
    }
    return acc;
}

std::vector<std::pair<GhzIndex, GhzIndex>> SwapDecomposition::support(double tol) const {
    std::vector<std::pair<GhzIndex, GhzIndex>> out;
    for (int g = 0; g < 8; ++g) {
        for (int h = 0; h < 8; ++h) {
            if (std::abs(c[g][h]) > tol) {
                out.emplace_back(GhzIndex::from_linear(g), GhzIndex::from_linear(h));
            }
        }
    }
    return out;
}

SwapDecomposition decompose_swap(const StateVector& psi) {
    if (psi.n_qubits() != 6) throw DimensionError("decompose_swap: need a 6-qubit state");
    // Reorder to (2,4,6,1,3,5): block index s for Debbie, u for Alice/Bob/Charlie.
    std::vector<cplx> perm(64);
    for (std::size_t u = 0; u < 8; ++u) {
        for (std::size_t s = 0; s < 8; ++s) {
            perm[s * 8 + u] = psi.amp(interleave_135_246(u, s));
        }
    }
    const auto& basis = cached_basis();
    SwapDecomposition d{};
    for (int g = 0; g < 8; ++g) {
        for (int h = 0; h < 8; ++h) {
            const StateVector gh = kron(basis[g], basis[h]);
            d.c[g][h] = kern::active().dot_conj(gh.amps().data(), perm.data(), 64);
        }
    }
    if (std::abs(d.norm_sq() - 1.0) > kTol) {
        throw NumericError("swap decomposition lost normalization");
    }
    return d;
}

StateVector reconstruct_swap(const SwapDecomposition& d) {
    const auto& basis = cached_basis();
    std::vector<cplx> perm(64, cplx{});
    for (int g = 0; g < 8; ++g) {
        for (int h = 0; h < 8; ++h) {
            if (d.c[g][h] == cplx{}) continue;
            const StateVector gh = kron(basis[g], basis[h]);
            kern::active().axpy(d.c[g][h], gh.amps().data(), perm.data(), 64);
        }
    }
    std::vector<cplx> amps(64);
    for (std::size_t u = 0; u < 8; ++u) {
        for (std::size_t s = 0; s < 8; ++s) {
            amps[interleave_135_246(u, s)] = perm[s * 8 + u];
        }
    }
    return StateVector(6, std::move(amps));
}

std::string outcome_name(AnalyzerOutcome o) {
    switch (o) {
        case AnalyzerOutcome::Phi0Plus: return "Phi0+";
        case AnalyzerOutcome::Phi0Minus: return "Phi0-";
        default: return "fail";
    }
}

namespace {

// Projection of a 6-qubit state onto GHZ outcome g on qubits 2,4,6;
// returns the unnormalized remainder on qubits 1,3,5.
std::vector<cplx> project_246(const StateVector& psi, const StateVector& g) {
    std::vector<cplx> r(8, cplx{});
    for (std::size_t u = 0; u < 8; ++u) {
        cplx acc{};
        for (std::size_t s = 0; s < 8; ++s) {
            acc += std::conj(g.amp(s)) * psi.amp(interleave_135_246(u, s));
        }
        r[u] = acc;
    }
    return r;
}

}  // namespace

MeasurementRecord postselect(const StateVector& psi, GhzIndex outcome) {
    if (psi.n_qubits() != 6) throw DimensionError("postselect: need a 6-qubit state");
    const auto& basis = cached_basis();
    std::vector<cplx> r = project_246(psi, basis[outcome.linear()]);
    const double prob = kern::active().norm_sq(r.data(), r.size());
    if (prob < 1e-15) {
        throw NoSupportError("outcome " + label_ascii(outcome) + " has no support");
    }
    MeasurementRecord rec;
    rec.ghz_outcome = outcome;
    rec.probability = prob;
    rec.conditional_state = StateVector::raw(3, std::move(r)).normalized();
    return rec;
}

std::vector<MeasurementRecord> analyzer_measure(const StateVector& psi) {
    const auto& basis = cached_basis();
    std::vector<MeasurementRecord> out;
    double identified = 0.0;
    for (int i = 0; i < 2; ++i) {  // linear 0 = Phi0+, 1 = Phi0-
        MeasurementRecord rec;
        rec.analyzer = i == 0 ? AnalyzerOutcome::Phi0Plus : AnalyzerOutcome::Phi0Minus;
        rec.ghz_outcome = GhzIndex::from_linear(i);
        if (psi.n_qubits() == 6) {
            std::vector<cplx> r = project_246(psi, basis[i]);
            rec.probability = kern::active().norm_sq(r.data(), r.size());
            if (rec.probability >= 1e-15) {
                rec.conditional_state = StateVector::raw(3, std::move(r)).normalized();
            }
        } else if (psi.n_qubits() == 3) {
            const cplx ov = inner(basis[i], psi);
            rec.probability = std::norm(ov);
            if (rec.probability >= 1e-15) rec.conditional_state = basis[i];
        } else {
            throw DimensionError("analyzer_measure: need a 3- or 6-qubit state");
        }
        identified += rec.probability;
        out.push_back(std::move(rec));
    }
    MeasurementRecord& fail = out.emplace_back();
    fail.analyzer = AnalyzerOutcome::Fail;
    fail.probability = std::max(0.0, 1.0 - identified);
    return out;
}

StateVector product_eigenstate(const std::array<PauliAxis, 3>& axes, const std::array<int, 3>& signs) {
    StateVector acc = StateVector::scalar_unit();
    for (int i = 0; i < 3; ++i) {
        cplx second;
        if (axes[i] == PauliAxis::X) {
            second = cplx{static_cast<double>(signs[i]), 0.0};
        } else if (axes[i] == PauliAxis::Y) {
            second = cplx{0.0, static_cast<double>(signs[i])};
        } else {
            throw DomainError("product_eigenstate: axes must be X or Y");
        }
        acc = kron(acc, StateVector(1, {cplx{kInvSqrt2, 0.0}, second * kInvSqrt2}));
    }
    return acc;
}

ContextualityRun contextuality_run(int identity_index, const std::array<int, 3>& signs) {
    if (identity_index < 1 || identity_index > 4) {
        throw DomainError("identity index must lie in 1..4");
    }
    for (int s : signs) {
        if (s != 1 && s != -1) throw DomainError("signs must be +-1");
    }
    const auto triples = verifier::triples_246();
    const PauliString& triple = triples[identity_index - 1];
    std::array<PauliAxis, 3> axes = {triple.factors()[0], triple.factors()[1], triple.factors()[2]};

    const StateVector state = product_eigenstate(axes, signs);
    const auto& basis = cached_basis();
    const auto table = ghz_eigen_table();
    const int column = column_of_identity(identity_index);

    ContextualityRun run;
    run.identity_index = identity_index;
    run.signs = signs;
    run.triple_label = triple.label();

    double identifiable = 0.0;
    int shared_value = 0;
    for (int g = 0; g < 8; ++g) {
        const double weight = std::norm(inner(basis[g], state));
        if (g < 2) identifiable += weight;
        if (weight <= kTol) continue;
        const int value = table[g][column];
        if (shared_value == 0) {
            shared_value = value;
        } else if (value != shared_value) {
            throw PhysicsViolationError("support states disagree on " + triple.label());
        }
        run.support.push_back(GhzIndex::from_linear(g));
    }
    run.triple_value = shared_value;
    run.identity_holds = shared_value == signs[0] * signs[1] * signs[2];
    run.identifiable_probability = identifiable;
    return run;
}

namespace {

// Precomputed sampling model: Debbie's 8-outcome distribution on qubits
// 2,4,6 of rho(F)x3, and for each outcome and setting the joint distribution
// of the three single-qubit +-1 results on qubits 1,3,5.
struct SamplingModel {
    std::array<double, 8> p_ghz;
    // [ghz][setting-1][outcome bits: Alice<<2 | Bob<<1 | Charlie, bit=1 -> -1]
    std::array<std::array<std::array<double, 8>, 4>, 8> p_joint;
    std::array<std::array<int, 4>, 8> table;
};

CMatrix single_qubit_projector(PauliAxis axis, int sign) {
    CMatrix m(2);
    const double s = 0.5 * sign;
    m.at(0, 0) = 0.5;
    m.at(1, 1) = 0.5;
    if (axis == PauliAxis::X) {
        m.at(0, 1) = s;
        m.at(1, 0) = s;
    } else {
        m.at(0, 1) = cplx{0.0, -s};
        m.at(1, 0) = cplx{0.0, s};
    }
    return m;
}

SamplingModel build_model(verifier::NoiseParams noise) {
    const DensityMatrix pair = verifier::noisy_singlet(noise);
    const DensityMatrix rho6 = dm_kron(dm_kron(pair, pair), pair);
    const auto& basis = cached_basis();
    const auto triples = verifier::triples_246();

    SamplingModel model;
    model.table = ghz_eigen_table();
    for (int gi = 0; gi < 8; ++gi) {
        // Conditional (unnormalized) state on qubits 1,3,5 given outcome gi.
        CMatrix cond(8);
        const StateVector& g = basis[gi];
        for (std::size_t u = 0; u < 8; ++u) {
            for (std::size_t v = 0; v < 8; ++v) {
                cplx acc{};
                for (std::size_t s = 0; s < 8; ++s) {
                    for (std::size_t t = 0; t < 8; ++t) {
                        const cplx w = std::conj(g.amp(s)) * g.amp(t);
                        if (w == cplx{}) continue;
                        acc += w * rho6.entries().at(interleave_135_246(u, s),
                                                     interleave_135_246(v, t));
                    }
                }
                cond.at(u, v) = acc;
            }
        }
        cplx tr{};
        for (std::size_t u = 0; u < 8; ++u) tr += cond.at(u, u);
        const double p = tr.real();
        model.p_ghz[gi] = p;
        if (p < 1e-15) {
            for (auto& per_setting : model.p_joint[gi]) per_setting.fill(0.0);
            continue;
        }
        kern::active().scale(cplx{1.0 / p, 0.0}, cond.data(), cond.size());
        const DensityMatrix rho_c(3, std::move(cond));

        for (int k = 0; k < 4; ++k) {
            const auto axes = triples[k].factors();  // same pattern on qubits 1,3,5
            for (int o = 0; o < 8; ++o) {
                const int v1 = (o & 4) ? -1 : +1;
                const int v2 = (o & 2) ? -1 : +1;
                const int v3 = (o & 1) ? -1 : +1;
                const CMatrix proj = kron(kron(single_qubit_projector(axes[0], v1),
                                               single_qubit_projector(axes[1], v2)),
                                          single_qubit_projector(axes[2], v3));
                const cplx val =
                    kern::active().dot_conj(rho_c.entries().data(), proj.data(), proj.size());
                model.p_joint[gi][k][o] = std::max(0.0, val.real());
            }
        }
    }
    return model;
}

int pick_from(const double* probs, int n, double u) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return n - 1;
}

int parse_policy(std::string_view policy) {
    // returns 0 for round-robin, otherwise the fixed setting 1..4
    if (policy == "round-robin") return 0;
    if (policy == "fixed") return 1;
    if (policy.starts_with("fixed:") && policy.size() == 7) {
        const char c = policy[6];
        if (c >= '1' && c <= '4') return c - '0';
    }
    throw DomainError("unknown setting policy: " + std::string(policy));
}

}  // namespace

SampleStats sample_shots(long n, std::uint64_t seed, verifier::NoiseParams noise,
                         std::string_view policy) {
    if (n < 1) throw DomainError("need at least one shot");
    const int fixed_setting = parse_policy(policy);
    const SamplingModel model = build_model(noise);

    SampleStats stats;
    stats.shots_total = n;
    stats.shots.reserve(static_cast<std::size_t>(n));

    double sum = 0.0, sum_sq = 0.0;
    long accepted = 0;
    for (long i = 0; i < n; ++i) {
        std::mt19937_64 eng(splitmix64(seed + static_cast<std::uint64_t>(i)));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);

        const int setting = fixed_setting ? fixed_setting : 1 + static_cast<int>(i % 4);
        const int gi = pick_from(model.p_ghz.data(), 8, uniform(eng));
        const int o = pick_from(model.p_joint[gi][setting - 1].data(), 8, uniform(eng));

        ShotResult shot;
        shot.setting = setting;
        shot.local_values = {(o & 4) ? -1 : +1, (o & 2) ? -1 : +1, (o & 1) ? -1 : +1};
        shot.accepted = gi < 2;
        shot.debbie_outcome = gi == 0   ? AnalyzerOutcome::Phi0Plus
                              : gi == 1 ? AnalyzerOutcome::Phi0Minus
                                        : AnalyzerOutcome::Fail;
        if (shot.accepted) {
            const int debbie_value = model.table[gi][column_of_identity(setting)];
            const int product =
                debbie_value * shot.local_values[0] * shot.local_values[1] * shot.local_values[2];
            shot.product = product;
            sum += product;
            sum_sq += 1.0;  // products are +-1
            ++accepted;
        }
        stats.shots.push_back(std::move(shot));
    }
    if (accepted == 0) throw InsufficientStatsError("no accepted shots");

    const double mean = sum / accepted;
    const double var = accepted > 1 ? (sum_sq - accepted * mean * mean) / (accepted - 1) : 0.0;
    stats.estimate = 4.0 * mean;
    stats.std_error = 4.0 * std::sqrt(std::max(0.0, var) / accepted);
    stats.accepted = accepted;
    stats.acceptance_fraction = static_cast<double>(accepted) / static_cast<double>(n);
    return stats;
}

}  // namespace avn::ghz
