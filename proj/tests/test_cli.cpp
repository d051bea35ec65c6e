// End-to-end tests of the avn binary: spawned as a subprocess, checking exit
// codes, text output, the JSON report schema and the CSV sweep format.
// The binary path comes from argv[1] or the AVN_CLI_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_cli_path;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const auto err_path = std::filesystem::temp_directory_path() /
                          ("avn_cli_err_" + std::to_string(::getpid()) + ".txt");
    const std::string cmd = "\"" + g_cli_path + "\" " + args + " 2>" + err_path.string();
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = ::pclose(pipe);

    std::ifstream err_file(err_path);
    std::stringstream err;
    err << err_file.rdbuf();
    std::filesystem::remove(err_path);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, err.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("verify passes at the default tolerance") {
    const auto r = run_cli("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("verify emits a schema-valid JSON report") {
    const auto r = run_cli("verify --format json");
    REQUIRE(r.exit_code == 0);
    const auto report = nlohmann::json::parse(r.out);

    CHECK(report.at("schema_version").get<int>() == 1);
    CHECK(report.at("status") == "pass");
    CHECK(report.contains("tool_version"));
    CHECK(report.contains("timestamp"));

    const auto& sections = report.at("sections");
    const std::vector<std::string> expected = {
        "eigenequations", "operator_identities", "hv_lhv",            "hv_nchv",
        "mermin_gap",     "ghz_table",           "swap_decomposition", "contextuality"};
    CHECK(sections.size() == 8);
    for (const auto& name : expected) {
        CAPTURE(name);
        REQUIRE(sections.contains(name));
        CHECK(sections.at(name).at("status") == "pass");
        REQUIRE(sections.at(name).contains("metrics"));
        for (const auto& [key, value] : sections.at(name).at("metrics").items()) {
            if (key.find("residual") != std::string::npos ||
                key.find("deviation") != std::string::npos) {
                CHECK(value.get<double>() >= 0.0);
            }
        }
    }
    CHECK(sections.at("eigenequations").at("metrics").at("max_residual").get<double>() < 1e-12);
    CHECK(sections.at("hv_lhv").at("metrics").at("satisfying_count").get<int>() == 0);
    CHECK(sections.at("swap_decomposition").at("metrics").at("nonzero_count").get<int>() == 8);

    // round-trip: parse(emit(report)) == report
    CHECK(nlohmann::json::parse(report.dump()) == report);
}

TEST_CASE("verify output is reproducible apart from the timestamp") {
    auto strip_timestamp = [](const std::string& text) {
        auto doc = nlohmann::json::parse(text);
        doc.erase("timestamp");
        return doc.dump(2);
    };
    const auto a = run_cli("verify --format json");
    const auto b = run_cli("verify --format json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
}

TEST_CASE("verify fails at an unreachable tolerance") {
    const auto r = run_cli("verify --tolerance 1e-30");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify rejects bad flags") {
    CHECK(run_cli("verify --format yaml").exit_code == 2);
    CHECK(run_cli("verify --tolerance -1").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("hv subcommand reports counts, certificate and bounds") {
    for (const std::string model : {"lhv", "nchv"}) {
        CAPTURE(model);
        const auto r = run_cli("hv --model " + model);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("0 / 1024 satisfying") != std::string::npos);
        CHECK(r.out.find("parity-unsatisfiable") != std::string::npos);
        CHECK(r.out.find("bound(constrained)=2") != std::string::npos);
        CHECK(r.out.find("bound(unconstrained)=4") != std::string::npos);
    }
    const auto witnesses = run_cli("hv --model lhv --list-witnesses");
    CHECK(witnesses.exit_code == 0);
    CHECK(witnesses.out.find("(none)") != std::string::npos);

    CHECK(run_cli("hv --model foo").exit_code == 2);
    CHECK(run_cli("hv").exit_code == 2);
}

TEST_CASE("noise sweep CSV") {
    const auto r = run_cli("noise --from 0 --to 1 --steps 11");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "F,expectation_O,lhv_bound,violates");

    double prev_f = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::stringstream row(lines[i]);
        std::string f_str, e_str, bound_str, violates_str;
        std::getline(row, f_str, ',');
        std::getline(row, e_str, ',');
        std::getline(row, bound_str, ',');
        std::getline(row, violates_str, ',');

        CHECK(f_str.size() == 11);  // x.xxxxxxxxx
        const double f = std::stod(f_str);
        const double e = std::stod(e_str);
        CHECK(f > prev_f);
        prev_f = f;
        CHECK(bound_str == "2");
        CHECK(violates_str == (std::abs(e) > 2.0 ? "true" : "false"));
        CHECK(e == doctest::Approx(-4.0 * f * f * f).epsilon(1e-9));
    }
    CHECK(lines[6] == "0.500000000,-0.5,2,false");
    CHECK(lines[11] == "1.000000000,-4,2,true");

    // threshold goes to stderr when the CSV occupies stdout
    CHECK(r.err.find("0.793700526") != std::string::npos);
}

TEST_CASE("noise writes the CSV to a file") {
    const auto path = std::filesystem::temp_directory_path() /
                      ("avn_sweep_" + std::to_string(::getpid()) + ".csv");
    const auto r = run_cli("noise --from 0 --to 1 --steps 5 --out " + path.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("0.793700526") != std::string::npos);  // threshold on stdout

    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    const auto lines = split_lines(content.str());
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "F,expectation_O,lhv_bound,violates");
    std::filesystem::remove(path);

    CHECK(run_cli("noise --out /nonexistent-dir/x.csv").exit_code == 1);
    CHECK(run_cli("noise --from 0.5 --to 0.5").exit_code == 2);
    CHECK(run_cli("noise --steps 1").exit_code == 2);
    CHECK(run_cli("noise --from 0.9 --to 0.1").exit_code == 2);
}

TEST_CASE("swap prints the eight coefficients") {
    const auto r = run_cli("swap");
    CHECK(r.exit_code == 0);
    int coeff_lines = 0;
    for (const auto& line : split_lines(r.out)) {
        if (line.find("0.353553390593") != std::string::npos) ++coeff_lines;
    }
    CHECK(coeff_lines == 8);
    CHECK(r.out.find("global phase") != std::string::npos);
}

TEST_CASE("table1 matches the expected rows") {
    const auto r = run_cli("table1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Φ₀⁺: +1 -1 -1 -1") != std::string::npos);
    CHECK(r.out.find("Φ₂⁻: -1 -1 +1 -1") != std::string::npos);
    CHECK(r.out.find("x2x4x6") != std::string::npos);
}

TEST_CASE("context subcommand") {
    const auto r = run_cli("context --identity 1 --signs +++");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "support {Φ₀⁻,Φ₁⁻,Φ₂⁺,Φ₃⁺}; "
          "x2y4y6=+1; identity holds; P(identifiable)=0.25\n");

    CHECK(run_cli("context --identity 4 --signs --+").exit_code == 0);
    CHECK(run_cli("context --identity 5 --signs +++").exit_code == 2);
    CHECK(run_cli("context --identity 1 --signs ++").exit_code == 2);
    CHECK(run_cli("context --identity 1 --signs abc").exit_code == 2);
}

TEST_CASE("sample subcommand") {
    const auto r = run_cli("sample --shots 20000 --seed 7 --fidelity 1.0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("estimate <O> = -4.000000 +/- 0.000000") != std::string::npos);
    CHECK(r.out.find("acceptance fraction: 0.2") != std::string::npos);

    CHECK(run_cli("sample --shots 0").exit_code == 2);
    CHECK(run_cli("sample --fidelity 1.5").exit_code == 2);
}

TEST_CASE("help is available everywhere") {
    CHECK(run_cli("--help").exit_code == 0);
    for (const std::string sub :
         {"verify", "hv", "noise", "swap", "table1", "context", "sample"}) {
        CAPTURE(sub);
        CHECK(run_cli(sub + " --help").exit_code == 0);
    }
}

int run_all(int argc, char** argv) {
    doctest::Context context;
    context.applyCommandLine(argc, argv);
    return context.run();
}

int main(int argc, char** argv) {
    if (argc > 1 && argv[1][0] != '-') {
        g_cli_path = argv[1];
    } else if (const char* env = std::getenv("AVN_CLI_BIN")) {
        g_cli_path = env;
    } else {
        std::fprintf(stderr, "usage: test_cli <path-to-avn-binary>  (or set AVN_CLI_BIN)\n");
        return 1;
    }
    return run_all(argc, argv);
}
