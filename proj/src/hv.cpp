#include "avn/hv.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "avn/errors.hpp"
#include "avn/verifier.hpp"

namespace avn::hv {

namespace {

constexpr std::array<const char*, 16> kKnownLabels = {
    "x1", "y1", "x3", "y3", "x5", "y5", "x2", "y2", "x4", "y4", "x6", "y6",
    "x2y4y6", "y2x4y6", "y2y4x6", "x2x4x6",
};

const std::array<const char*, 4> kTriples = {"x2y4y6", "y2x4y6", "y2y4x6", "x2x4x6"};

// Both systems are generated from the operator equations (the eigenequation
// factors and the identity factors), not transcribed independently, so the
// labels automatically stay consistent with the operator algebra.
ConstraintSystem from_equations(std::string name,
                                const std::vector<std::vector<std::string>>& label_sets,
                                const std::vector<int>& rhs) {
    ConstraintSystem sys;
    sys.name = std::move(name);
    for (std::size_t i = 0; i < label_sets.size(); ++i) {
        for (const std::string& l : label_sets[i]) {
            if (!is_known_label(l)) throw DomainError("unknown observable label: " + l);
        }
        sys.equations.push_back({label_sets[i], rhs[i]});
    }
    return sys;
}

long index_of(const std::vector<std::string>& universe, const std::string& label) {
    const auto it = std::lower_bound(universe.begin(), universe.end(), label);
    return it - universe.begin();
}

// Evaluate the product of an equation's labels under the assignment encoded
// by `idx` (bit set -> -1).
int product_under(const Equation& eq, const std::vector<long>& positions, unsigned long idx,
                  std::size_t eq_offset) {
    int prod = 1;
    for (std::size_t j = 0; j < eq.labels.size(); ++j) {
        if ((idx >> positions[eq_offset + j]) & 1u) prod = -prod;
    }
    return prod;
}

Assignment decode(const std::vector<std::string>& universe, unsigned long idx) {
    Assignment a;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        a[universe[i]] = ((idx >> i) & 1u) ? -1 : +1;
    }
    return a;
}

struct FlatSystem {
    std::vector<std::string> universe;
    std::vector<long> positions;      // label positions, all equations concatenated
    std::vector<std::size_t> offset;  // start of each equation's positions
    std::vector<int> rhs;
    std::size_t n_equations;
};

FlatSystem flatten(const std::vector<Equation>& equations) {
    std::set<std::string> labels;
    for (const Equation& eq : equations) {
        for (const std::string& l : eq.labels) labels.insert(l);
    }
    FlatSystem fs;
    fs.universe.assign(labels.begin(), labels.end());
    if (fs.universe.size() > 20) throw DomainError("label universe too large for enumeration");
    for (const Equation& eq : equations) {
        fs.offset.push_back(fs.positions.size());
        for (const std::string& l : eq.labels) {
            fs.positions.push_back(index_of(fs.universe, l));
        }
        fs.rhs.push_back(eq.required_product);
    }
    fs.n_equations = equations.size();
    return fs;
}

}  // namespace

bool is_known_label(const std::string& label) {
    return std::find(kKnownLabels.begin(), kKnownLabels.end(), label) != kKnownLabels.end();
}

std::vector<std::string> ConstraintSystem::universe() const {
    std::set<std::string> labels;
    for (const Equation& eq : equations) {
        for (const std::string& l : eq.labels) labels.insert(l);
    }
    return {labels.begin(), labels.end()};
}

ConstraintSystem lhv_system() {
    // Label sets mirror eigen_system(): triple , x/y on qubits 1,3,5.
    std::vector<std::vector<std::string>> sets;
    const auto eqs = verifier::eigen_system();
    for (int t = 0; t < 4; ++t) {
        sets.push_back({eqs[t].factors[0].label(), eqs[t].factors[1].label(),
                        eqs[t].factors[2].label(), eqs[t].factors[3].label()});
    }
    sets.push_back({kTriples[3], kTriples[0], kTriples[1], kTriples[2]});
    return from_equations("LHV", sets, {-1, -1, -1, -1, -1});
}

ConstraintSystem nchv_system() {
    std::vector<std::vector<std::string>> sets;
    const auto op = verifier::mermin_Oprime();
    for (const auto& term : op.terms) {
        sets.push_back({term.factors[0].label(), term.factors[1].label(), term.factors[2].label(),
                        term.factors[3].label()});
    }
    sets.push_back({kTriples[3], kTriples[0], kTriples[1], kTriples[2]});
    return from_equations("NCHV", sets, {+1, +1, +1, +1, -1});
}

EnumerationResult enumerate_satisfying(const ConstraintSystem& system) {
    const FlatSystem fs = flatten(system.equations);
    const unsigned long total = 1ul << fs.universe.size();
    EnumerationResult res{0, static_cast<long>(total), {}};
    for (unsigned long idx = 0; idx < total; ++idx) {
        bool ok = true;
        for (std::size_t e = 0; e < fs.n_equations && ok; ++e) {
            ok = product_under(system.equations[e], fs.positions, idx, fs.offset[e]) == fs.rhs[e];
        }
        if (ok) {
            ++res.count;
            res.witnesses.push_back(decode(fs.universe, idx));
        }
    }
    return res;
}

ParityCertificate parity_certificate(const ConstraintSystem& system) {
    std::map<std::string, int> occurrences;
    int rhs_product = 1;
    for (const Equation& eq : system.equations) {
        for (const std::string& l : eq.labels) ++occurrences[l];
        rhs_product *= eq.required_product;
    }
    bool all_even = true;
    std::string odd_label;
    for (const auto& [label, n] : occurrences) {
        if (n % 2 != 0) {
            all_even = false;
            odd_label = label;
            break;
        }
    }
    ParityCertificate cert;
    cert.unsatisfiable = all_even && rhs_product == -1;
    if (cert.unsatisfiable) {
        cert.reason =
            "every label occurs an even number of times, so the product of all "
            "left-hand sides is +1, but the right-hand sides multiply to -1";
    } else if (!all_even) {
        cert.reason = "not parity-blocked: label " + odd_label + " occurs an odd number of times";
    } else {
        cert.reason = "not parity-blocked: right-hand sides multiply to +1";
    }
    return cert;
}

namespace {

BoundResult extremize(const std::vector<BoundTerm>& terms, const std::optional<Equation>& constraint,
                      bool maximize) {
    std::vector<Equation> eqs;
    for (const BoundTerm& t : terms) eqs.push_back({t.labels, +1});  // labels only
    if (constraint) eqs.push_back(*constraint);
    const FlatSystem fs = flatten(eqs);
    const unsigned long total = 1ul << fs.universe.size();
    const std::size_t n_terms = terms.size();

    bool found = false;
    int best = 0;
    unsigned long best_idx = 0;
    for (unsigned long idx = 0; idx < total; ++idx) {
        if (constraint) {
            if (product_under(*constraint, fs.positions, idx, fs.offset[n_terms]) !=
                constraint->required_product) {
                continue;
            }
        }
        int value = 0;
        for (std::size_t t = 0; t < n_terms; ++t) {
            value += terms[t].sign * product_under(eqs[t], fs.positions, idx, fs.offset[t]);
        }
        if (!maximize) value = -value;
        if (!found || value > best) {
            found = true;
            best = value;
            best_idx = idx;
        }
    }
    if (!found) throw DomainError("classical bound: constraint admits no assignment");
    return {maximize ? best : -best, decode(fs.universe, best_idx)};
}

}  // namespace

BoundResult classical_bound(const std::vector<BoundTerm>& terms,
                            const std::optional<Equation>& constraint) {
    return extremize(terms, constraint, true);
}

BoundResult classical_min(const std::vector<BoundTerm>& terms,
                          const std::optional<Equation>& constraint) {
    return extremize(terms, constraint, false);
}

std::vector<BoundTerm> o_terms() {
    std::vector<BoundTerm> out;
    for (const Equation& eq : lhv_system().equations) {
        if (out.size() == 4) break;
        out.push_back({eq.labels, +1});
    }
    return out;
}

std::vector<BoundTerm> oprime_terms() {
    std::vector<BoundTerm> out;
    const auto sys = nchv_system();
    for (std::size_t i = 0; i < 4; ++i) out.push_back({sys.equations[i].labels, +1});
    return out;
}

Equation triple_product_constraint() {
    return {{kTriples[0], kTriples[1], kTriples[2], kTriples[3]}, -1};
}

}  // namespace avn::hv
