// Acceptance suite: one checked criterion per test case, one PASS/FAIL
// line each on stdout. Criterion 9's first half is expected to stay red;
// the printed detail and the min_ca_instability experiment document why.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "dillscope/verify.hpp"

using namespace dillscope;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "dillscope_acceptance";
    fs::create_directories(dir);
    return dir;
}

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, title,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

bool run_and_report(int id, const char* title,
                    ExperimentResult (*fn)(const fs::path&)) {
    const ExperimentResult r = fn(work_dir());
    report(id, title, r.pass, r.detail);
    return r.pass;
}

bool directories_byte_identical(const fs::path& a, const fs::path& b) {
    std::vector<std::string> fa, fb;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) fa.push_back(fs::relative(e.path(), a).string());
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) fb.push_back(fs::relative(e.path(), b).string());
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa != fb) return false;
    for (const auto& rel : fa)
        if (read_file(a / rel) != read_file(b / rel)) return false;
    return !fa.empty();
}

}  // namespace

TEST_CASE("criterion 1: edit distance exactness") {
    const Alphabet bin(2);
    const Word u = Word::parse("010101", bin), v = Word::parse("101010", bin);
    bool ok = true;
    // every one of the six positions differs (definition-consistent value;
    // forced by additivity: 3 * d_H(01,10) = 6)
    ok &= hamming(u, v) == 6;
    ok &= levenshtein(u, v) == HalfInt::whole(1);
    ok &= levenshtein(Word::parse("0000", bin), Word::parse("00001", bin)) ==
          HalfInt::from_doubled(1);
    report(1, "edit distance exactness", ok,
           "d_H=" + std::to_string(hamming(u, v)) + " d_L=" + levenshtein(u, v).str() +
               " d_L(0000,00001)=1/2");
    CHECK(ok);
}

TEST_CASE("criterion 2: oracle equivalence") {
    CHECK(run_and_report(2, "DP Levenshtein == deletion-search oracle", exp_oracle_equivalence));
}

TEST_CASE("criterion 3: metric properties") {
    CHECK(run_and_report(3, "symmetry/triangle/additivity/subadditivity", exp_metric_properties));
}

TEST_CASE("criterion 4: occurrence matrices and spectral radius") {
    CHECK(run_and_report(4, "matrices exact, fibonacci rho within 1e-6", exp_matrices));
}

TEST_CASE("criterion 5: classifier verdicts on all nine built-ins") {
    CHECK(run_and_report(5, "classifier verdicts", exp_classifier_verdicts));
}

TEST_CASE("criterion 6: besicovitch failure witness") {
    CHECK(run_and_report(6, "fibonacci witness distances", exp_fibonacci_besicovitch));
}

TEST_CASE("criterion 7: thue-morse isometry, exact periodic densities") {
    CHECK(run_and_report(7, "thue-morse isometry", exp_thue_morse_isometry));
}

TEST_CASE("criterion 8: feldman shift identity") {
    CHECK(run_and_report(8, "d_L(x, sigma x)/l <= 1/l", exp_shift_identity_feldman));
}

TEST_CASE("criterion 9: instability reproductions") {
    const ExperimentResult min_part = exp_min_doubling_instability(work_dir());
    const ExperimentResult xor_part = exp_xor_instability(work_dir());
    const bool ok = min_part.pass && xor_part.pass;
    report(9, "min-composed and xor instabilities", ok,
           "min: " + std::string(min_part.pass ? "ok" : min_part.detail) +
               "; xor: " + (xor_part.pass ? "ok" : xor_part.detail));
    // supplementary context for the expected red half
    const ExperimentResult plain_min = exp_min_ca_instability(work_dir());
    std::printf("       (supplementary: min_ca_instability %s -- %s)\n",
                plain_min.pass ? "PASS" : "FAIL", plain_min.detail.c_str());
    CHECK(xor_part.pass);
    CHECK(plain_min.pass);
    CHECK(min_part.pass);  // expected red: see decisions ledger and detail above
}

TEST_CASE("criterion 10: cocycle identity") {
    CHECK(run_and_report(10, "200 random cocycle checks at l=256", exp_cocycle_identity));
}

TEST_CASE("criterion 11: feldman lipschitz bound, empirical") {
    CHECK(run_and_report(11, "curve estimate <= ratio * fekete + 2^-6", exp_feldman_lipschitz));
}

TEST_CASE("criterion 12: determinism of verify all") {
    const fs::path base = work_dir();
    const fs::path dir_a = base / "det_a", dir_b = base / "det_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    bool ok = false;
    std::string how;
    if (const char* bin = std::getenv("DILLSCOPE_BIN")) {
        const fs::path out_a = base / "det_a_stdout.txt", out_b = base / "det_b_stdout.txt";
        const std::string cmd_a = std::string(bin) + " verify all --outdir " + dir_a.string() +
                                  " > " + out_a.string() + " 2>/dev/null";
        const std::string cmd_b = std::string(bin) + " verify all --outdir " + dir_b.string() +
                                  " > " + out_b.string() + " 2>/dev/null";
        const int rc_a = std::system(cmd_a.c_str());
        const int rc_b = std::system(cmd_b.c_str());
        ok = WEXITSTATUS(rc_a) == WEXITSTATUS(rc_b) &&
             read_file(out_a) == read_file(out_b) && directories_byte_identical(dir_a, dir_b);
        how = "two subprocess runs, stdout + artifacts byte-identical";
    } else {
        run_experiments("all", dir_a);
        run_experiments("all", dir_b);
        ok = directories_byte_identical(dir_a, dir_b);
        how = "two in-process runs, artifacts byte-identical";
    }
    report(12, "verify all determinism", ok, how);
    CHECK(ok);
}
