// End-to-end checks of the dillscope binary: exit codes, diagnostics,
// output formats. Needs DILLSCOPE_BIN (and DILLSCOPE_RULE_DIR for the
// data-file checks); ctest sets both.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "dillscope/builtins.hpp"
#include "dillscope/io_util.hpp"
#include "dillscope/json_report.hpp"

using namespace dillscope;
namespace fs = std::filesystem;

namespace {

std::string bin_path() {
    const char* bin = std::getenv("DILLSCOPE_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "dillscope_test_stdout.txt";
    const fs::path err = fs::temp_directory_path() / "dillscope_test_stderr.txt";
    const std::string cmd =
        bin_path() + " " + args + " > " + out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "dillscope_cli_scratch";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("rule data files match the built-ins") {
    const char* dir = std::getenv("DILLSCOPE_RULE_DIR");
    REQUIRE(dir != nullptr);
    for (const auto& [name, text] : builtin_rule_texts()) {
        const std::string file_text = read_file(fs::path(dir) / (name + ".rule"));
        CHECK(file_text == text);
        CHECK(rule_to_text(load_rule_file((fs::path(dir) / (name + ".rule")).string())) == text);
    }
}

TEST_CASE("classify: builtin name and rule file") {
    auto r = run("classify fibonacci");
    CHECK(r.exit_code == 0);
    auto j = ordered_json::parse(r.out);
    CHECK(j["besicovitch"]["status"] == "NotWellDefined");
    CHECK(j["feldman"]["lipschitz"] == 2.0);
    CHECK(j["feldman"]["lipschitz_exact"] == "2");
    // a not-well-defined verdict ships a constructive witness pair
    CHECK(j["besicovitch"]["witness"]["input_distance"] == "0");
    CHECK(j["besicovitch"]["witness"]["image_distance_value"].get<double>() >= 0.4);
    CHECK(j["maxal"] == "01");

    const char* dir = std::getenv("DILLSCOPE_RULE_DIR");
    REQUIRE(dir != nullptr);
    auto r2 = run("classify " + (fs::path(dir) / "thue_morse.rule").string());
    CHECK(r2.exit_code == 0);
    auto j2 = ordered_json::parse(r2.out);
    CHECK(j2["besicovitch"]["regime"] == "Isometry");
    CHECK(j2["predicates"]["primitive"] == true);
    CHECK(j2["rule"]["name"] == "thue_morse");

    auto r3 = run("classify xor");
    auto j3 = ordered_json::parse(r3.out);
    CHECK(j3["predicates"]["ca"] == true);
    CHECK(j3["feldman"]["lipschitz"] == 3.0);
    CHECK(j3["predicates"]["irreducible"].is_null());
    CHECK(j3["components"].is_null());
}

TEST_CASE("classify: parse error diagnostics use file:line and exit 2") {
    const fs::path bad = scratch_dir() / "bad.rule";
    write_file_atomic(bad, "alphabet=01\ndiameter=1\n0 -> 01\n0 -> 1\n");
    auto r = run("classify " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: " + bad.string() + ":4: duplicate window") != std::string::npos);

    auto r2 = run("classify /nonexistent/no.rule");
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.rfind("error: ", 0) == 0);
}

TEST_CASE("distance: csv output and exact estimates") {
    auto r = run("distance --kind hamming --x '(01)^inf' --y '(10)^inf' --lengths 2,4");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "l,raw_doubled,normalized\n"
          "2,4,1.000000000\n"
          "4,8,1.000000000\n"
          "# estimate=1.000000000 kind=ExactPeriodic\n");

    auto r2 = run("distance --kind levenshtein --x '(01)^inf' --y '(10)^inf' --lengths 4,8");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("kind=FeketeUpperBound") != std::string::npos);

    auto r3 = run("distance --kind weyl-hamming --x '(01)^inf' --y '(01)^inf' --lengths 4,8");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("# estimate=0.000000000 kind=TailMax") != std::string::npos);

    // identical specs: all zeros
    auto r4 = run("distance --kind hamming --x '1(0)^inf' --y '1(0)^inf' --lengths 8");
    CHECK(r4.out.find("8,0,0.000000000") != std::string::npos);

    // fix() specs work as inputs
    auto r5 = run("distance --kind hamming --x 'fix(thue_morse,0)' --y 'fix(thue_morse,1)' "
                  "--lengths 64");
    CHECK(r5.exit_code == 0);
    CHECK(r5.out.find("64,128,1.000000000") != std::string::npos);
}

TEST_CASE("distance: usage errors exit 2") {
    CHECK(run("distance --kind hamming --x '(01)^inf' --y '(10)^inf' --lengths 0,4").exit_code ==
          2);
    CHECK(run("distance --kind sideways --x '(01)^inf' --y '(10)^inf'").exit_code == 2);
    CHECK(run("distance --x '(01)^inf'").exit_code == 2);  // missing --y
    CHECK(run("distance --kind hamming --x '(01)^inf' --y '(02)^inf'").exit_code == 2);
    // alphabets of x and y must agree: fixed point is binary, periodic spec ternary
    CHECK(run("distance --kind hamming --alphabet 012 --x 'fix(thue_morse,0)' --y '(012)^inf'")
              .exit_code == 2);
    // weyl on a non-periodic spec is unsupported
    CHECK(run("distance --kind weyl-hamming --x 'fix(thue_morse,0)' --y '(01)^inf' "
              "--lengths 4,8")
              .exit_code == 2);
}

TEST_CASE("simulate: ppm output, determinism, resource cap") {
    const fs::path a = scratch_dir() / "a.ppm";
    const fs::path b = scratch_dir() / "b.ppm";
    auto r = run("simulate xor --x '1(0)^inf' --steps 8 --width 16 --out " + a.string());
    CHECK(r.exit_code == 0);
    auto r2 = run("simulate xor --x '1(0)^inf' --steps 8 --width 16 --out " + b.string());
    CHECK(r2.exit_code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(a).substr(0, 3) == "P6\n");

    // one-sided xor fixes 1(0)^inf: every row stays 1000...
    const std::string ppm = read_file(a);
    std::size_t header_end = 0;
    for (int nl = 0; nl < 3; ++nl) header_end = ppm.find('\n', header_end) + 1;
    for (int t = 0; t < 8; ++t) {
        CHECK(static_cast<unsigned char>(ppm[header_end + t * 16 * 3]) == 0x00);      // 1: black
        CHECK(static_cast<unsigned char>(ppm[header_end + t * 16 * 3 + 3]) == 0xCC);  // 0: red
    }

    auto r3 = run("simulate thue_morse --x '(0)^inf' --steps 2 --width 200000000 --out " +
                  (scratch_dir() / "big.ppm").string());
    CHECK(r3.exit_code == 3);

    // DILLSCOPE_MAX_INPUT lowers the cap
    const std::string env_cmd = "DILLSCOPE_MAX_INPUT=100 " + bin_path() +
                                " simulate xor --x '1(0)^inf' --steps 64 --width 80 --out " +
                                (scratch_dir() / "capped.ppm").string() + " > /dev/null 2>&1";
    const int rc = std::system(env_cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 3);
}

TEST_CASE("verify: single experiment and unknown id") {
    const fs::path dir = scratch_dir() / "verify_one";
    auto r = run("verify matrices --outdir " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("PASS", 0) == 0);
    CHECK(fs::exists(dir / "matrices.json"));

    auto r2 = run("verify no_such_experiment");
    CHECK(r2.exit_code == 2);

    auto r3 = run("verify thue_morse_isometry --json --outdir " + dir.string());
    CHECK(r3.exit_code == 0);
    auto j = ordered_json::parse(r3.out);
    CHECK(j[0]["id"] == "thue_morse_isometry");
    CHECK(j[0]["pass"] == true);
}

TEST_CASE("bare invocation and help") {
    CHECK(run("").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("classify").exit_code == 2);  // missing argument
}
