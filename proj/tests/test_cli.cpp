// Integration tests for the rml binary: thin-wrapper equivalence against
// direct library calls, exit codes, output formats, and byte-for-byte
// reproducibility. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rml/exp_sums.hpp"

namespace {

std::string g_bin;
std::filesystem::path g_tmp;

int run(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = g_bin + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string text;
    char buf[512];
    while (fgets(buf, sizeof buf, p)) text += buf;
    const int status = pclose(p);
    if (out) *out = text;
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// value of the named column in the first data row of a '#'-headed CSV
double csv_first(const std::string& text, const std::string& column) {
    std::istringstream is(text);
    std::string line, header;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') {
            header = line;
            break;
        }
    REQUIRE(!header.empty());
    int idx = -1, i = 0;
    std::istringstream hs(header);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
        if (cell == column) idx = i;
        ++i;
    }
    REQUIRE(idx >= 0);
    REQUIRE(std::getline(is, line));
    std::istringstream rs(line);
    for (int k = 0; k <= idx; ++k) std::getline(rs, cell, ',');
    return std::stod(cell);
}

} // namespace

TEST_CASE("eval matches the library and the documented value") {
    std::string out;
    const auto csv = (g_tmp / "eval.csv").string();
    CHECK(run("eval --x0 0 --t 0 --N 100000 --out " + csv, &out) == 0);
    const std::string text = slurp(csv);
    const double re = csv_first(text, "re");
    const double im = csv_first(text, "im");
    CHECK(re == doctest::Approx(3.28986).epsilon(1e-4));
    CHECK(std::abs(im) < 1e-12);
    // thin wrapper: identical to the direct call
    const auto direct = rml::eval_R(0.0, 0.0, 100000);
    CHECK(re == direct.real());
    CHECK(im == direct.imag());
}

TEST_CASE("gauss zero classification through the CLI") {
    std::string out;
    const auto csv = (g_tmp / "gauss.csv").string();
    CHECK(run("gauss --p 1 --b 0 --q 2 --out " + csv, &out) == 0);
    CHECK(out.find("zero_class=true") != std::string::npos);
    const std::string text = slurp(csv);
    CHECK(csv_first(text, "modulus") < 1e-12);
    CHECK(csv_first(text, "zero_class") == 1.0);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run("eval --no-such-flag 1") == 2);
    CHECK(run("eval --N -3") == 2);
    CHECK(run("gauss --p 2 --b 0 --q 4") == 2);      // gcd != 1
    CHECK(run("eval --x0 0 --t 0 --out /nonexistent-dir/x.csv") == 2);
    CHECK(run("scaling --x0 0.25 --p 1 --q 4") == 2); // non-fraction x0
}

TEST_CASE("numerical failures exit with code 3") {
    // expansion too shallow for the exponent estimate: one usable convergent
    CHECK(run("cf --t 0.5000000001 --depth 40") == 3);
}

TEST_CASE("tolerance-driven truncation is recorded") {
    const auto csv = (g_tmp / "eps.csv").string();
    CHECK(run("eval --x0 0 --t 0 --eps 0.001 --out " + csv) == 0);
    const std::string text = slurp(csv);
    CHECK(text.find("# N: 2000") != std::string::npos);
    CHECK(std::abs(csv_first(text, "re") - 3.28887) < 1e-4); // pi^2/3 minus the 2/N tail
}

TEST_CASE("trace endpoints and manifest digest") {
    const auto csv = (g_tmp / "trace.csv").string();
    CHECK(run("trace --x0 0 --samples 3 --N 400 --out " + csv) == 0);
    const std::string text = slurp(csv);
    CHECK(csv_first(text, "re") == 0.0);
    CHECK(csv_first(text, "im") == 0.0);
    const std::string manifest = slurp(csv + ".manifest.json");
    CHECK(manifest.find("fnv1a64") != std::string::npos);
    CHECK(manifest.find("\"command\": \"trace\"") != std::string::npos);
}

TEST_CASE("reproducibility: identical flags give identical bytes") {
    const auto a = (g_tmp / "rep_a.csv").string();
    const auto b = (g_tmp / "rep_b.csv").string();
    const std::string args = "spectrum --x0 0 --grid 65536 --j 14 --N 16384 --out ";
    CHECK(run(args + a) == 0);
    CHECK(run(args + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    // thread cap does not change results
    const auto c = (g_tmp / "rep_c.csv").string();
    CHECK(run("--threads 3 " + args + c) == 0);
    CHECK(slurp(a) == slurp(c));
}

TEST_CASE("json mirror carries the same rows") {
    const auto csv = (g_tmp / "g.csv").string();
    const auto js = (g_tmp / "g.json").string();
    CHECK(run("gauss --p 1 --b 0 --q 3 --out " + csv + " --json " + js) == 0);
    const std::string jtext = slurp(js);
    CHECK(jtext.find("\"command\": \"gauss\"") != std::string::npos);
    CHECK(jtext.find("modulus") != std::string::npos);
    CHECK(csv_first(slurp(csv), "modulus") == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("RML_OUT_DIR redirects relative outputs") {
    const auto dir = g_tmp / "outdir";
    std::filesystem::create_directories(dir);
    const std::string cmd = "RML_OUT_DIR=" + dir.string() + " " + g_bin +
                            " gauss --p 1 --b 0 --q 5 --out env.csv 2>/dev/null >/dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(std::filesystem::exists(dir / "env.csv"));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-rml-binary>\n");
        return 1;
    }
    g_bin = argv[1];
    g_tmp = std::filesystem::temp_directory_path() / "rml_cli_test";
    std::filesystem::create_directories(g_tmp);
    doctest::Context ctx;
    return ctx.run();
}
