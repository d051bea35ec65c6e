// avn: verification CLI for the three-singlet all-versus-nothing argument.
//
// Subcommands:
//   verify   run every check and emit a pass/fail report (text or JSON)
//   hv       hidden-variable enumeration, parity certificate, classical bounds
//   noise    fidelity sweep of <O> against the classical bound (CSV)
//   swap     GHZ-pair expansion of the three-singlet state
//   table1   joint eigenvalue table of the triple products on the GHZ basis
//   context  one identity-verification run behind the GHZ analyzer
//   sample   Monte-Carlo simulation of the post-selected experiment
//
// Exit codes: 0 all checks pass, 1 verification or I/O failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "avn/ghz.hpp"
#include "avn/hv.hpp"
#include "avn/verifier.hpp"
#include "avn/version.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace ghz = avn::ghz;
namespace hv = avn::hv;
namespace verifier = avn::verifier;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string iso8601_now() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// ---------------------------------------------------------------------------
// verify

struct Section {
    std::string name;
    bool pass = true;
    json metrics = json::object();
    json details = json::object();
};

Section section_eigenequations(double tol) {
    Section s{"eigenequations"};
    double max_residual = 0.0;
    json list = json::array();
    for (const auto& r : verifier::verify_eigenequations(verifier::build_psi())) {
        max_residual = std::max(max_residual, r.residual);
        list.push_back({{"operator", r.operator_label},
                        {"expected_eigenvalue", r.expected_eigenvalue},
                        {"residual", r.residual}});
    }
    s.metrics["max_residual"] = max_residual;
    s.details["equations"] = list;
    s.pass = max_residual < tol;
    return s;
}

Section section_identities(double tol) {
    Section s{"operator_identities"};
    double max_dev = 0.0;
    json list = json::array();
    for (const auto& r : verifier::verify_identities()) {
        max_dev = std::max(max_dev, r.max_entry_deviation);
        list.push_back({{"identity", r.label}, {"deviation", r.max_entry_deviation}});
    }
    s.metrics["max_deviation"] = max_dev;
    s.details["identities"] = list;
    s.pass = max_dev < tol;
    return s;
}

Section section_hv(const hv::ConstraintSystem& sys, const std::vector<hv::BoundTerm>& terms,
                   std::string section_name) {
    Section s{std::move(section_name)};
    const auto enumeration = hv::enumerate_satisfying(sys);
    const auto cert = hv::parity_certificate(sys);
    const auto constrained = hv::classical_bound(terms, hv::triple_product_constraint());
    const auto unconstrained = hv::classical_bound(terms, std::nullopt);

    s.metrics["satisfying_count"] = enumeration.count;
    s.metrics["assignments_total"] = enumeration.total;
    s.metrics["parity_unsatisfiable"] = cert.unsatisfiable ? 1 : 0;
    s.metrics["bound_constrained"] = constrained.max_value;
    s.metrics["bound_unconstrained"] = unconstrained.max_value;

    json eqs = json::array();
    for (const auto& eq : sys.equations) {
        eqs.push_back({{"labels", eq.labels}, {"required_product", eq.required_product}});
    }
    s.details["equations"] = eqs;
    s.details["parity_reason"] = cert.reason;

    s.pass = enumeration.count == 0 && cert.unsatisfiable && constrained.max_value == 2 &&
             unconstrained.max_value == 4;
    return s;
}

Section section_mermin(double tol) {
    Section s{"mermin_gap"};
    const double e_psi = verifier::expectation(verifier::mermin_O(), verifier::build_psi());
    const double dev = std::abs(e_psi + 4.0);

    const auto oprime = verifier::mermin_Oprime();
    const avn::CMatrix ident = avn::CMatrix::identity(8);
    double oprime_dev = 0.0;
    json terms = json::array();
    for (const auto& term : oprime.terms) {
        const double d = max_abs_diff(verifier::term_matrix(term), ident);
        oprime_dev = std::max(oprime_dev, d);
        terms.push_back({{"term", term.label}, {"deviation_from_identity", d}});
    }

    s.metrics["expectation_O_psi"] = e_psi;
    s.metrics["deviation_from_minus_4"] = dev;
    s.metrics["oprime_term_max_deviation"] = oprime_dev;
    s.metrics["classical_bound"] = 2;
    s.details["oprime_terms"] = terms;
    s.pass = dev < tol && oprime_dev < tol;
    return s;
}

Section section_table(double tol) {
    Section s{"ghz_table"};
    const auto table = ghz::ghz_eigen_table();
    const auto basis = ghz::ghz_basis();
    const auto triples = verifier::triples_246();
    const std::array<int, 4> column_of_triple = {1, 2, 3, 0};

    double max_dev = 0.0;
    int bad_rows = 0;
    json rows = json::array();
    for (int g = 0; g < 8; ++g) {
        if (table[g][0] * table[g][1] * table[g][2] * table[g][3] != -1) ++bad_rows;
        for (int t = 0; t < 4; ++t) {
            const double e = expectation(triples[t], basis[g]);
            max_dev = std::max(max_dev, std::abs(e - table[g][column_of_triple[t]]));
        }
        rows.push_back({{"state", ghz::label_ascii(ghz::GhzIndex::from_linear(g))},
                        {"values", table[g]}});
    }
    s.metrics["max_expectation_deviation"] = max_dev;
    s.metrics["row_product_violations"] = bad_rows;
    s.details["columns"] = ghz::kTableColumns;
    s.details["rows"] = rows;
    s.pass = bad_rows == 0 && max_dev < tol;
    return s;
}

// Reference sign pattern of the swap expansion, in (g, partner) order.
struct SwapRef {
    ghz::GhzIndex g, h;
    double sign;
};

const std::array<SwapRef, 8> kSwapReference = {{
    {{0, -1}, {0, +1}, +1.0},
    {{0, +1}, {0, -1}, -1.0},
    {{1, +1}, {1, -1}, +1.0},
    {{1, -1}, {1, +1}, -1.0},
    {{2, +1}, {2, -1}, +1.0},
    {{2, -1}, {2, +1}, -1.0},
    {{3, +1}, {3, -1}, +1.0},
    {{3, -1}, {3, +1}, -1.0},
}};

Section section_swap(double tol) {
    Section s{"swap_decomposition"};
    const avn::StateVector psi = verifier::build_psi();
    const auto d = ghz::decompose_swap(psi);
    const double inv_sqrt8 = 1.0 / std::sqrt(8.0);

    const auto support = d.support();
    double mag_dev = 0.0;
    int pairing_violations = 0;
    for (const auto& [g, h] : support) {
        mag_dev = std::max(mag_dev, std::abs(std::abs(d.c[g.linear()][h.linear()]) - inv_sqrt8));
        if (h.k != g.k || h.sign != -g.sign) ++pairing_violations;
    }

    const avn::cplx global =
        d.c[kSwapReference[0].g.linear()][kSwapReference[0].h.linear()] / kSwapReference[0].sign /
        inv_sqrt8;
    double pattern_dev = 0.0;
    json coeffs = json::array();
    for (const auto& ref : kSwapReference) {
        const avn::cplx c = d.c[ref.g.linear()][ref.h.linear()];
        pattern_dev = std::max(pattern_dev, std::abs(c - global * ref.sign * inv_sqrt8));
        coeffs.push_back({{"debbie", ghz::label_ascii(ref.g)},
                          {"remote", ghz::label_ascii(ref.h)},
                          {"re", c.real()},
                          {"im", c.imag()}});
    }

    const avn::StateVector back = ghz::reconstruct_swap(d);
    double recon_dev = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        recon_dev = std::max(recon_dev, std::abs(back.amp(i) - psi.amp(i)));
    }

    s.metrics["nonzero_count"] = support.size();
    s.metrics["max_magnitude_deviation"] = mag_dev;
    s.metrics["pairing_violations"] = pairing_violations;
    s.metrics["pattern_max_deviation"] = pattern_dev;
    s.metrics["reconstruction_max_deviation"] = recon_dev;
    s.metrics["global_phase_re"] = global.real();
    s.metrics["global_phase_im"] = global.imag();
    s.details["coefficients"] = coeffs;
    s.pass = support.size() == 8 && pairing_violations == 0 && mag_dev < tol &&
             pattern_dev < tol && recon_dev < tol && std::abs(std::abs(global) - 1.0) < tol;
    return s;
}

Section section_contextuality(double tol) {
    Section s{"contextuality"};
    int failed = 0;
    double prob_dev = 0.0;
    json runs = json::array();
    for (int identity = 1; identity <= 4; ++identity) {
        for (int bits = 0; bits < 8; ++bits) {
            const std::array<int, 3> signs = {(bits & 4) ? -1 : +1, (bits & 2) ? -1 : +1,
                                              (bits & 1) ? -1 : +1};
            const auto run = ghz::contextuality_run(identity, signs);
            if (!run.identity_holds) ++failed;
            prob_dev = std::max(prob_dev, std::abs(run.identifiable_probability - 0.25));
            std::string sign_str;
            for (int v : signs) sign_str += v > 0 ? '+' : '-';
            json support = json::array();
            for (const auto& g : run.support) support.push_back(ghz::label_ascii(g));
            runs.push_back({{"identity", identity},
                            {"signs", sign_str},
                            {"triple", run.triple_label},
                            {"support", support},
                            {"triple_value", run.triple_value},
                            {"holds", run.identity_holds},
                            {"identifiable_probability", run.identifiable_probability}});
        }
    }
    s.metrics["runs"] = 32;
    s.metrics["failed_runs"] = failed;
    s.metrics["max_identifiable_probability_deviation"] = prob_dev;
    s.details["runs"] = runs;
    s.pass = failed == 0 && prob_dev < tol;
    return s;
}

int cmd_verify(const std::string& format, double tolerance) {
    std::vector<Section> sections;
    sections.push_back(section_eigenequations(tolerance));
    sections.push_back(section_identities(tolerance));
    sections.push_back(section_hv(hv::lhv_system(), hv::o_terms(), "hv_lhv"));
    sections.push_back(section_hv(hv::nchv_system(), hv::oprime_terms(), "hv_nchv"));
    sections.push_back(section_mermin(tolerance));
    sections.push_back(section_table(tolerance));
    sections.push_back(section_swap(tolerance));
    sections.push_back(section_contextuality(tolerance));

    bool all_pass = true;
    for (const Section& s : sections) all_pass = all_pass && s.pass;

    if (format == "json") {
        json report;
        report["schema_version"] = avn::kReportSchemaVersion;
        report["tool_version"] = avn::kVersion;
        report["timestamp"] = iso8601_now();
        report["tolerance"] = tolerance;
        report["status"] = all_pass ? "pass" : "fail";
        json secs = json::object();
        for (const Section& s : sections) {
            secs[s.name] = {{"status", s.pass ? "pass" : "fail"},
                            {"metrics", s.metrics},
                            {"details", s.details}};
        }
        report["sections"] = secs;
        std::printf("%s\n", report.dump(2).c_str());
    } else {
        std::printf("avn verify (tolerance %.3g)\n", tolerance);
        for (const Section& s : sections) {
            std::printf("[%s] %s", s.pass ? "PASS" : "FAIL", s.name.c_str());
            for (const auto& [key, value] : s.metrics.items()) {
                if (value.is_number_float()) {
                    std::printf("  %s=%.3e", key.c_str(), value.get<double>());
                } else {
                    std::printf("  %s=%s", key.c_str(), value.dump().c_str());
                }
            }
            std::printf("\n");
        }
        std::printf("overall: %s\n", all_pass ? "PASS" : "FAIL");
    }
    return all_pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// hv

int cmd_hv(const std::string& model, bool list_witnesses) {
    const bool lhv = model == "lhv";
    const hv::ConstraintSystem sys = lhv ? hv::lhv_system() : hv::nchv_system();
    const auto terms = lhv ? hv::o_terms() : hv::oprime_terms();
    const char* op_name = lhv ? "O" : "O'";

    std::printf("model: %s\n", sys.name.c_str());
    std::printf("equations:\n");
    for (const auto& eq : sys.equations) {
        std::printf("  ");
        for (const auto& l : eq.labels) std::printf("v(%s) ", l.c_str());
        std::printf("= %+d\n", eq.required_product);
    }

    const auto enumeration = hv::enumerate_satisfying(sys);
    const auto cert = hv::parity_certificate(sys);
    const auto constrained = hv::classical_bound(terms, hv::triple_product_constraint());
    const auto unconstrained = hv::classical_bound(terms, std::nullopt);

    std::printf("%ld / %ld satisfying; %s; bound(constrained)=%d; bound(unconstrained)=%d\n",
                enumeration.count, enumeration.total,
                cert.unsatisfiable ? "parity-unsatisfiable" : "not parity-blocked",
                constrained.max_value, unconstrained.max_value);
    std::printf("parity: %s\n", cert.reason.c_str());
    std::printf("classical bound on %s with the triple-product constraint: %d\n", op_name,
                constrained.max_value);
    std::printf("classical bound on %s without the constraint: %d\n", op_name,
                unconstrained.max_value);

    if (list_witnesses) {
        std::printf("witnesses:\n");
        if (enumeration.witnesses.empty()) {
            std::printf("  (none)\n");
        } else {
            for (const auto& w : enumeration.witnesses) {
                std::printf("  ");
                for (const auto& [label, v] : w) std::printf("%s=%+d ", label.c_str(), v);
                std::printf("\n");
            }
        }
    }

    const bool ok = enumeration.count == 0 && cert.unsatisfiable && constrained.max_value == 2;
    return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// noise

int cmd_noise(double from, double to, int steps, const std::string& out_path) {
    std::string csv = "F,expectation_O,lhv_bound,violates\n";
    for (int i = 0; i < steps; ++i) {
        const double f = from + (to - from) * i / (steps - 1);
        const double e = verifier::expectation_O_noisy({f});
        const bool violates = std::abs(e) > 2.0;
        csv += format_double("%.9f", f) + "," + format_double("%.12g", e) + "," +
               format_double("%.12g", 2.0) + "," + (violates ? "true" : "false") + "\n";
    }

    const double threshold = verifier::violation_threshold(2.0);
    const std::string threshold_line =
        "threshold |<O>| = 2 at F = " + format_double("%.9f", threshold) + "\n";

    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
        std::fputs(threshold_line.c_str(), stderr);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
            return kExitFail;
        }
        out << csv;
        if (!out.flush()) {
            std::fprintf(stderr, "error: short write to %s\n", out_path.c_str());
            return kExitFail;
        }
        std::fputs(threshold_line.c_str(), stdout);
    }
    return kExitPass;
}

// ---------------------------------------------------------------------------
// swap / table1 / context / sample

int cmd_swap() {
    const auto d = ghz::decompose_swap(verifier::build_psi());
    const double inv_sqrt8 = 1.0 / std::sqrt(8.0);
    const avn::cplx global =
        d.c[kSwapReference[0].g.linear()][kSwapReference[0].h.linear()] / kSwapReference[0].sign /
        inv_sqrt8;

    std::printf("GHZ-pair expansion, qubits (2,4,6) x (1,3,5):\n");
    bool pattern_ok = true;
    for (const auto& ref : kSwapReference) {
        const avn::cplx c = d.c[ref.g.linear()][ref.h.linear()];
        std::printf("  %s ⊗ %s   % .12f %+.12fi\n", ghz::label_utf8(ref.g).c_str(),
                    ghz::label_utf8(ref.h).c_str(), c.real(), c.imag());
        pattern_ok = pattern_ok && std::abs(c - global * ref.sign * inv_sqrt8) < avn::kTol;
    }
    std::printf("support size: %zu, coefficient magnitude 1/sqrt(8)\n", d.support().size());
    std::printf("global phase vs reference pattern: % .0f\n", global.real());
    return d.support().size() == 8 && pattern_ok ? kExitPass : kExitFail;
}

int cmd_table1() {
    const auto table = ghz::ghz_eigen_table();
    std::printf("state");
    for (const char* col : ghz::kTableColumns) std::printf("  %s", col);
    std::printf("\n");
    for (int g = 0; g < 8; ++g) {
        std::printf("%s:", ghz::label_utf8(ghz::GhzIndex::from_linear(g)).c_str());
        for (int t = 0; t < 4; ++t) std::printf(" %+d", table[g][t]);
        std::printf("\n");
    }
    return kExitPass;
}

int cmd_context(int identity, const std::string& signs_str) {
    if (signs_str.size() != 3 || signs_str.find_first_not_of("+-") != std::string::npos) {
        std::fprintf(stderr, "error: --signs must be three characters drawn from +-\n");
        return kExitUsage;
    }
    std::array<int, 3> signs{};
    for (int i = 0; i < 3; ++i) signs[i] = signs_str[i] == '+' ? +1 : -1;

    const auto run = ghz::contextuality_run(identity, signs);
    std::string support;
    for (const auto& g : run.support) {
        if (!support.empty()) support += ",";
        support += ghz::label_utf8(g);
    }
    std::printf("support {%s}; %s=%+d; identity %s; P(identifiable)=%.2f\n", support.c_str(),
                run.triple_label.c_str(), run.triple_value,
                run.identity_holds ? "holds" : "VIOLATED", run.identifiable_probability);
    return run.identity_holds ? kExitPass : kExitFail;
}

int cmd_sample(long shots, std::uint64_t seed, double fidelity) {
    const auto stats = ghz::sample_shots(shots, seed, {fidelity});
    std::printf("shots: %ld  accepted: %ld  acceptance fraction: %.4f\n", stats.shots_total,
                stats.accepted, stats.acceptance_fraction);
    std::printf("estimate <O> = %.6f +/- %.6f\n", stats.estimate, stats.std_error);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum verification toolkit for the three-singlet all-versus-nothing argument"};
    app.require_subcommand(1);
    app.set_version_flag("--version", avn::kVersion);

    // verify
    auto* verify = app.add_subcommand("verify", "Run every check and emit a report");
    std::string format = "text";
    double tolerance = 1e-12;
    verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--tolerance", tolerance, "Numerical tolerance for residual checks")
        ->check(CLI::PositiveNumber);

    // hv
    auto* hv_cmd = app.add_subcommand("hv", "Hidden-variable search and classical bounds");
    std::string model;
    bool list_witnesses = false;
    hv_cmd->add_option("--model", model, "Hidden-variable model")
        ->required()
        ->check(CLI::IsMember({"lhv", "nchv"}));
    hv_cmd->add_flag("--list-witnesses", list_witnesses, "Print satisfying assignments");

    // noise
    auto* noise = app.add_subcommand("noise", "Fidelity sweep of <O> (CSV)");
    double from = 0.0, to = 1.0;
    int steps = 11;
    std::string out_path;
    noise->add_option("--from", from, "Sweep start")->check(CLI::Range(0.0, 1.0));
    noise->add_option("--to", to, "Sweep end")->check(CLI::Range(0.0, 1.0));
    noise->add_option("--steps", steps, "Grid points")->check(CLI::Range(2, 100000));
    noise->add_option("--out", out_path, "CSV output path (default: stdout)");

    // swap / table1
    auto* swap_cmd = app.add_subcommand("swap", "GHZ-pair expansion of the three-singlet state");
    auto* table_cmd = app.add_subcommand("table1", "Triple-product eigenvalues on the GHZ basis");

    // context
    auto* context = app.add_subcommand("context", "One identity run behind the GHZ analyzer");
    int identity = 1;
    std::string signs = "+++";
    context->add_option("--identity", identity, "Identity index")->check(CLI::Range(1, 4));
    context->add_option("--signs", signs, "Projection signs, e.g. ++-");

    // sample
    auto* sample = app.add_subcommand("sample", "Monte-Carlo post-selected experiment");
    long shots = 100000;
    std::uint64_t seed = 1;
    double fidelity = 1.0;
    sample->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Random seed");
    sample->add_option("--fidelity", fidelity, "Singlet fidelity F")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(format, tolerance);
        if (hv_cmd->parsed()) return cmd_hv(model, list_witnesses);
        if (noise->parsed()) {
            if (!(from < to)) {
                std::fprintf(stderr, "error: --from must be strictly below --to\n");
                return kExitUsage;
            }
            return cmd_noise(from, to, steps, out_path);
        }
        if (swap_cmd->parsed()) return cmd_swap();
        if (table_cmd->parsed()) return cmd_table1();
        if (context->parsed()) return cmd_context(identity, signs);
        if (sample->parsed()) return cmd_sample(shots, seed, fidelity);
    } catch (const avn::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
