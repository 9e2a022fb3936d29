#pragma once

#include <array>
#include <bit>
#include <filesystem>
#include <functional>
#include <sstream>

#include "dillscope/analysis.hpp"
#include "dillscope/builtins.hpp"
#include "dillscope/io_util.hpp"
#include "dillscope/json_report.hpp"
#include "dillscope/metrics.hpp"
#include "dillscope/ppm.hpp"
#include "dillscope/prng.hpp"
#include "dillscope/spec_format.hpp"

namespace dillscope {

struct ExperimentResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline const Alphabet kBinary{2};

inline Word bw(const std::string& s) { return Word::parse(s, kBinary); }

inline InfiniteWordSpec random_periodic(SplitMix64& rng, const Alphabet& alpha,
                                        std::size_t max_t = 3, std::size_t max_p = 8) {
    Word t(alpha), p(alpha);
    const std::size_t tl = rng.below(max_t + 1);
    const std::size_t pl = 1 + rng.below(max_p);
    for (std::size_t i = 0; i < tl; ++i) t.push_back(static_cast<Letter>(rng.below(alpha.size())));
    for (std::size_t i = 0; i < pl; ++i) p.push_back(static_cast<Letter>(rng.below(alpha.size())));
    return InfiniteWordSpec::eventually_periodic(t, p);
}

inline Word random_finite(SplitMix64& rng, const Alphabet& alpha, std::size_t max_len) {
    Word u(alpha);
    const std::size_t n = rng.below(max_len + 1);
    for (std::size_t i = 0; i < n; ++i)
        u.push_back(static_cast<Letter>(rng.below(alpha.size())));
    return u;
}

inline Word run_word(const std::string& pattern, std::size_t times) {
    Word p = bw(pattern);
    return repeat(p, times);
}

// all-subsequence bitsets for binary words up to length 8; a subsequence
// of length m with bits b is the index (1<<m)|b, so 512 bits cover all
struct SubseqSet {
    std::array<std::uint64_t, 8> bits{};
};

inline SubseqSet subsequence_set(std::uint32_t word_bits, std::size_t len) {
    SubseqSet s;
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
        std::uint32_t sub = 0;
        int m = 0;
        for (std::size_t i = 0; i < len; ++i)
            if (mask & (1u << i)) {
                sub |= ((word_bits >> i) & 1u) << m;
                ++m;
            }
        const std::uint32_t packed = (1u << m) | sub;
        s.bits[packed / 64] |= std::uint64_t{1} << (packed % 64);
    }
    return s;
}

inline int max_common_subseq_len(const SubseqSet& a, const SubseqSet& b) {
    for (int w = 7; w >= 0; --w) {
        const std::uint64_t x = a.bits[w] & b.bits[w];
        if (!x) continue;
        const int top = 63 - std::countl_zero(x);
        const std::uint32_t packed = static_cast<std::uint32_t>(w * 64 + top);
        return static_cast<int>(std::bit_width(packed)) - 1;
    }
    return -1;  // unreachable: the empty word is common to everything
}

inline Word word_from_bits(std::uint32_t bits, std::size_t len) {
    Word u(kBinary);
    for (std::size_t i = 0; i < len; ++i) u.push_back((bits >> i) & 1u);
    return u;
}

inline std::string ratio_str(const Rational& r) { return r.str(); }

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// experiments

inline ExperimentResult exp_edit_distance_examples(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    bool ok = true;
    std::ostringstream note;
    const Word u = bw("010101"), v = bw("101010");
    const std::uint64_t dh = hamming(u, v);
    ok &= dh == 6;  // every position differs; see README on the worked example
    ok &= levenshtein(u, v) == HalfInt::whole(1);
    ok &= levenshtein(bw("0000"), bw("00001")) == HalfInt::from_doubled(1);
    ok &= lcs_length(u, v) == 5;
    ok &= apply_edit(u, EditOp::erase(0)).str() == "10101";
    ok &= apply_edit(bw("00001"), EditOp::erase(4)).str() == "0000";
    note << "d_H=" << dh << " d_L=" << levenshtein(u, v).str() << " d_L(0000,00001)="
         << levenshtein(bw("0000"), bw("00001")).str();

    ordered_json j;
    j["hamming_010101_101010"] = dh;
    j["levenshtein_010101_101010"] = levenshtein(u, v).str();
    j["levenshtein_0000_00001"] = levenshtein(bw("0000"), bw("00001")).str();
    j["lcs_010101_101010"] = lcs_length(u, v);
    write_file_atomic(outdir / "edit_distance_examples.json", j.dump(2) + "\n");
    return {"edit_distance_examples", ok, note.str()};
}

inline ExperimentResult exp_oracle_equivalence(const std::filesystem::path&) {
    using namespace verify_detail;
    // exhaustive: all binary pairs with |u|,|v| <= 8, via cached
    // deletion-subset sets (the definitional search, memoized per word)
    std::vector<std::pair<Word, SubseqSet>> words;
    for (std::size_t len = 0; len <= 8; ++len)
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits)
            words.emplace_back(word_from_bits(bits, len), subsequence_set(bits, len));
    std::uint64_t checked = 0, violations = 0;
    for (const auto& [u, su] : words)
        for (const auto& [v, sv] : words) {
            const int common = max_common_subseq_len(su, sv);
            const std::uint64_t expect_doubled =
                u.size() + v.size() - 2 * static_cast<std::uint64_t>(common);
            if (levenshtein(u, v).doubled != expect_doubled) ++violations;
            ++checked;
        }
    // the public oracle op on a smaller exhaustive slab
    for (std::size_t lu = 0; lu <= 5; ++lu)
        for (std::uint32_t bu = 0; bu < (1u << lu); ++bu)
            for (std::size_t lv = 0; lv <= 5; ++lv)
                for (std::uint32_t bv = 0; bv < (1u << lv); ++bv) {
                    const Word u = word_from_bits(bu, lu), v = word_from_bits(bv, lv);
                    if (!(levenshtein(u, v) == levenshtein_oracle(u, v))) ++violations;
                    ++checked;
                }
    // random ternary pairs
    SplitMix64 rng(0xfeed5eed);
    const Alphabet ternary(3);
    for (int i = 0; i < 1000; ++i) {
        const Word u = random_finite(rng, ternary, 10);
        const Word v = random_finite(rng, ternary, 10);
        if (!(levenshtein(u, v) == levenshtein_oracle(u, v))) ++violations;
        ++checked;
    }
    std::ostringstream note;
    note << checked << " pairs, " << violations << " violations";
    return {"oracle_equivalence", violations == 0, note.str()};
}

inline ExperimentResult exp_metric_properties(const std::filesystem::path&) {
    using namespace verify_detail;
    SplitMix64 rng(0xabcd1234);
    std::uint64_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const Alphabet alpha(2 + rng.below(2));
        const std::size_t n1 = rng.below(25), n2 = rng.below(25);
        Word u(alpha), v(alpha), u2(alpha), v2(alpha);
        for (std::size_t j = 0; j < n1; ++j) {
            u.push_back(static_cast<Letter>(rng.below(alpha.size())));
            v.push_back(static_cast<Letter>(rng.below(alpha.size())));
        }
        for (std::size_t j = 0; j < n2; ++j) {
            u2.push_back(static_cast<Letter>(rng.below(alpha.size())));
            v2.push_back(static_cast<Letter>(rng.below(alpha.size())));
        }
        // symmetry
        if (!(levenshtein(u, v) == levenshtein(v, u))) ++violations;
        if (hamming(u, v) != hamming(v, u)) ++violations;
        // triangle inequality through an independent word
        Word z = random_finite(rng, alpha, 24);
        if (levenshtein(u, v).doubled > levenshtein(u, z).doubled + levenshtein(z, v).doubled)
            ++violations;
        if (z.size() == u.size() && hamming(u, v) > hamming(u, z) + hamming(z, v)) ++violations;
        // Hamming additivity
        if (hamming(concat(u, u2), concat(v, v2)) != hamming(u, v) + hamming(u2, v2))
            ++violations;
        // Levenshtein subadditivity
        if (levenshtein(concat(u, u2), concat(v, v2)).doubled >
            levenshtein(u, v).doubled + levenshtein(u2, v2).doubled)
            ++violations;
        // bounds and Hamming domination
        const std::uint64_t dl = levenshtein(u, v).doubled;
        if (dl > u.size() + v.size()) ++violations;
        if (dl + 2 * std::min(u.size(), v.size()) < u.size() + v.size()) ++violations;
        if (dl > 2 * hamming(u, v)) ++violations;
    }
    return {"metric_properties", violations == 0,
            "10000 quadruples, " + std::to_string(violations) + " violations"};
}

inline ExperimentResult exp_matrices(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    bool ok = true;
    std::ostringstream note;
    auto m_tm = occurrence_matrix(builtin_rule("thue_morse"));
    ok &= m_tm.entries == std::vector<std::uint64_t>{1, 1, 1, 1};

    auto m_fib = occurrence_matrix(builtin_rule("fibonacci"));
    // definitional convention M_ab = |tau(a)|_b with tau(0)=01, tau(1)=0;
    // row sums must equal image lengths (2 and 1)
    ok &= m_fib.entries == std::vector<std::uint64_t>{1, 1, 1, 0};
    ok &= (m_fib * m_fib).entries == std::vector<std::uint64_t>{2, 1, 1, 1};
    ok &= m_fib.at(0, 0) + m_fib.at(0, 1) == 2;
    ok &= m_fib.at(1, 0) + m_fib.at(1, 1) == 1;

    auto m_oto = occurrence_matrix(builtin_rule("one_to_1_00"));
    ok &= m_oto.entries == std::vector<std::uint64_t>{0, 1, 2, 0};
    ok &= (m_oto * m_oto).entries == std::vector<std::uint64_t>{2, 0, 0, 2};

    auto decomp = components(builtin_rule("fibonacci"));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    double hi = 0;
    for (const auto& c : decomp.components) hi = std::max(hi, c.rho_high);
    ok &= std::abs(decomp.rho_plus_low - golden) < 1e-6 && std::abs(hi - golden) < 1e-6;
    note << "fib rho in [" << decomp.rho_plus_low << ", " << hi << "]";

    ordered_json j;
    j["thue_morse"] = m_tm.entries;
    j["fibonacci"] = m_fib.entries;
    j["fibonacci_squared"] = (m_fib * m_fib).entries;
    j["one_to_1_00_squared"] = (m_oto * m_oto).entries;
    j["fibonacci_rho_low"] = decomp.rho_plus_low;
    j["fibonacci_rho_high"] = hi;
    write_file_atomic(outdir / "matrices.json", j.dump(2) + "\n");
    return {"matrices", ok, note.str()};
}

inline ExperimentResult exp_classifier_verdicts(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    bool ok = true;
    std::ostringstream note;
    for (const auto& name : builtin_rule_names()) {
        const auto report = classify(builtin_rule(name), name);
        write_file_atomic(outdir / ("classify_" + name + ".json"),
                          classification_to_json(report).dump(2) + "\n");
    }
    auto fib = classify(builtin_rule("fibonacci"), "fibonacci");
    ok &= fib.besicovitch.status == BesicovitchStatus::NotWellDefined;
    ok &= fib.feldman.lipschitz == Rational(2);

    auto tm = classify(builtin_rule("thue_morse"), "thue_morse");
    ok &= tm.predicates.uniform && tm.predicates.primitive == true;
    ok &= tm.besicovitch.regime == BesicovitchRegime::Isometry;

    auto cantor = classify(builtin_rule("cantor"), "cantor");
    ok &= cantor.besicovitch.regime == BesicovitchRegime::Contracting;
    ok &= cantor.predicates.toeplitz == true;

    auto dbl = classify(builtin_rule("doubling"), "doubling");
    ok &= dbl.predicates.irreducible == false;
    ok &= dbl.component_decomposition.has_value();
    for (const auto& c : dbl.component_decomposition->components) ok &= c.maximum;

    auto zk = classify(builtin_rule("zero_keep"), "zero_keep");
    ok &= zk.component_decomposition->maxal == std::vector<Letter>{1};
    ok &= zk.feldman.equicontinuous == false;

    auto oto = classify(builtin_rule("one_to_1_00"), "one_to_1_00");
    ok &= oto.predicates.irreducible == true;
    ok &= oto.feldman.equicontinuous == true;

    auto xo = classify(builtin_rule("xor"), "xor");
    ok &= xo.predicates.ca;
    ok &= xo.feldman.lipschitz == Rational(3);

    note << "9 built-ins classified, verdict checks " << (ok ? "consistent" : "INCONSISTENT");
    return {"classifier_verdicts", ok, note.str()};
}

inline ExperimentResult exp_regime_coverage(const std::filesystem::path&) {
    using namespace verify_detail;
    bool ok = true;
    // nonuniform constant rule: every image is all zeros
    DillMap zeros(LocalRule(kBinary, 1, {bw("0"), bw("00")}));
    auto rz = classify_besicovitch(zeros);
    ok &= rz.status == BesicovitchStatus::WellDefinedConstant;
    SplitMix64 rng(0x5151);
    const Word ref = apply(zeros, random_periodic(rng, kBinary), 64);
    for (int i = 0; i < 50; ++i)
        ok &= apply(zeros, random_periodic(rng, kBinary), 64) == ref;

    // uniform ternary rule pinned between contraction and isometry
    const Alphabet ternary(3);
    DillMap mid(LocalRule(ternary, 1,
                          {Word::parse("00", ternary), Word::parse("11", ternary),
                           Word::parse("01", ternary)}));
    auto rm = classify_besicovitch(mid);
    ok &= rm.status == BesicovitchStatus::WellDefinedUniform;
    ok &= rm.regime == BesicovitchRegime::Equicontinuous;
    ok &= rm.maxd == 2 && rm.mind == 1;

    ok &= classify_besicovitch(builtin_rule("min_doubling")).regime ==
          BesicovitchRegime::Unclassified;
    return {"regime_coverage", ok,
            "constant / equicontinuous / unclassified branches exercised"};
}

inline ExperimentResult exp_fibonacci_besicovitch(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    bool ok = true;
    std::ostringstream note;
    const DillMap& fib = builtin_rule("fibonacci");
    auto zeros = InfiniteWordSpec::constant(0, kBinary);
    auto one_zeros = InfiniteWordSpec::eventually_periodic(bw("1"), bw("0"));
    ok &= besicovitch_exact_periodic(zeros, one_zeros) == Rational(0);
    ok &= besicovitch_exact_periodic(InfiniteWordSpec::periodic(bw("01")),
                                     InfiniteWordSpec::periodic(bw("10"))) == Rational(1);
    auto img_x = apply_as_spec(fib, zeros);
    auto img_y = apply_as_spec(fib, one_zeros);
    auto c = curve(DistanceKind::Hamming, img_x, img_y, geometric_lengths(6, 20));
    const Rational at_top = c.samples.back().normalized;
    ok &= c.samples.back().l == (1u << 20);
    ok &= at_top >= Rational(2, 5);
    note << "image distance at 2^20: " << at_top.str();
    write_file_atomic(outdir / "fibonacci_besicovitch.csv", curve_to_csv(c));
    return {"fibonacci_besicovitch", ok, note.str()};
}

inline ExperimentResult exp_thue_morse_isometry(const std::filesystem::path&) {
    using namespace verify_detail;
    const DillMap& tm = builtin_rule("thue_morse");
    SplitMix64 rng(0x7717);
    bool ok = true;
    Rational worst(0);
    for (int i = 0; i < 20; ++i) {
        auto x = random_periodic(rng, kBinary, 4, 16);
        auto y = random_periodic(rng, kBinary, 4, 16);
        const Rational before = besicovitch_exact_periodic(x, y);
        const Rational after =
            besicovitch_exact_periodic(apply_as_spec(tm, x), apply_as_spec(tm, y));
        const Rational diff = abs(after - before);
        if (diff > worst) worst = diff;
        ok &= diff <= Rational(1, 1024);
    }
    return {"thue_morse_isometry", ok, "worst |after-before| = " + worst.str()};
}

inline ExperimentResult exp_shift_identity_feldman(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    SplitMix64 rng(0x90210);
    bool ok = true;
    const auto lengths = geometric_lengths(6, 20);
    for (int i = 0; i < 10; ++i) {
        auto x = random_periodic(rng, kBinary, 4, 12);
        auto c = curve(DistanceKind::Levenshtein, x, shift(x, 1), lengths);
        for (const auto& s : c.samples)
            ok &= s.normalized <= Rational(1, static_cast<std::int64_t>(s.l));
        if (i == 0) write_file_atomic(outdir / "shift_identity_feldman.csv", curve_to_csv(c));
    }
    return {"shift_identity_feldman", ok, "d_L(x, sigma x)/l <= 1/l at every sampled l"};
}

inline ExperimentResult exp_min_doubling_instability(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    const DillMap& F = builtin_rule("min_doubling");
    std::vector<int> failing;
    for (int p = 2; p <= 32; ++p) {
        Word period = run_word("1", p - 1);
        period.push_back(0);
        const Word w = iterate(F, InfiniteWordSpec::periodic(period), p - 1, 1024);
        if (w.count(0) != w.size()) failing.push_back(p);
    }
    write_file_atomic(outdir / "min_doubling_p4.ppm",
                      render_spacetime_ppm(F, InfiniteWordSpec::periodic(bw("1110")), 32, 96));
    std::ostringstream note;
    if (failing.empty()) {
        note << "F^{p-1}((1^{p-1}0)^inf) = 0^inf for all p in 2..32";
    } else {
        note << "holds only for p=2; under this rule a 1-run of length r maps to "
                "length 2(r-1), so runs of length >= 2 persist (first failing p="
             << failing.front() << ", " << failing.size() << " of 31 fail)";
    }
    return {"min_doubling_instability", failing.empty(), note.str()};
}

inline ExperimentResult exp_min_ca_instability(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    const DillMap& F = builtin_rule("min");
    bool ok = true;
    for (int p = 2; p <= 32; ++p) {
        Word period = run_word("1", p - 1);
        period.push_back(0);
        const Word w = iterate(F, InfiniteWordSpec::periodic(period), p - 1, 1024);
        ok &= w.count(0) == w.size();
    }
    write_file_atomic(outdir / "min_ca_p8.ppm",
                      render_spacetime_ppm(F, InfiniteWordSpec::periodic(bw("11111110")), 16, 64));
    return {"min_ca_instability", ok,
            "plain Min CA erodes each 1-run by one letter per step: Min^{p-1}((1^{p-1}0)^inf) "
            "= 0^inf for p in 2..32"};
}

inline ExperimentResult exp_xor_instability(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    const DillMap& F = builtin_rule("xor");
    bool ok = true;
    std::ostringstream literal;
    for (int k = 1; k <= 6; ++k) {
        const std::uint64_t t = (std::uint64_t{1} << k) - 1;
        Word period = run_word("0", (1u << k) - 1);
        period.push_back(1);
        const Word w = iterate(F, InfiniteWordSpec::periodic(period), t, 1024);
        ok &= w.count(1) == w.size();
        // the literal 2k-1 exponent reading, recorded but not asserted
        Word lit_period = run_word("0", 2 * k - 1);
        lit_period.push_back(1);
        const Word lw = iterate(F, InfiniteWordSpec::periodic(lit_period), t, 1024);
        literal << (lw.count(1) == lw.size() ? "" : "!") << k << " ";
    }
    Word p16 = run_word("0", 15);
    p16.push_back(1);
    write_file_atomic(outdir / "xor_k4.ppm",
                      render_spacetime_ppm(F, InfiniteWordSpec::periodic(p16), 64, 128));
    return {"xor_instability", ok,
            "F^{2^k-1}((0^{2^k-1}1)^inf)=1^inf for k<=6; literal 2k-1 period reading per k "
            "(! = fails): " +
                literal.str()};
}

inline ExperimentResult exp_cocycle_identity(const std::filesystem::path&) {
    using namespace verify_detail;
    SplitMix64 rng(0xc0c7c1e);
    int fails = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t k = 2 + rng.below(2);
        const std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.below(3));
        Alphabet alpha(k);
        std::uint64_t windows = 1;
        for (std::uint32_t j = 0; j < s; ++j) windows *= k;
        std::vector<Word> table;
        for (std::uint64_t j = 0; j < windows; ++j) {
            Word im(alpha);
            const std::size_t len = 1 + rng.below(3);
            for (std::size_t h = 0; h < len; ++h)
                im.push_back(static_cast<Letter>(rng.below(k)));
            table.push_back(std::move(im));
        }
        DillMap F(LocalRule(alpha, s, std::move(table)));
        auto x = random_periodic(rng, alpha);
        const std::uint64_t n = rng.below(17);
        if (!check_cocycle_identity(F, x, n, 256)) ++fails;
    }
    return {"cocycle_identity", fails == 0,
            "200 random (rule, x, n<=16) triples at l=256, " + std::to_string(fails) +
                " failures"};
}

inline ExperimentResult exp_feldman_lipschitz(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    SplitMix64 rng(0xfe1d);
    bool ok = true;
    Rational worst_margin(1);
    const auto lengths = geometric_lengths(8, 16);
    for (const char* name :
         {"thue_morse", "fibonacci", "doubling", "cantor", "one_to_1_00", "zero_keep"}) {
        const DillMap& tau = builtin_rule(name);
        const Rational ratio(static_cast<std::int64_t>(tau.upper_norm()),
                             static_cast<std::int64_t>(tau.lower_norm()));
        for (int i = 0; i < 20; ++i) {
            auto x = random_periodic(rng, kBinary, 2, 8);
            auto y = random_periodic(rng, kBinary, 2, 8);
            const auto in_bounds = feldman_periodic_bounds(x, y);
            auto img_curve = curve(DistanceKind::Levenshtein, apply_as_spec(tau, x),
                                   apply_as_spec(tau, y), lengths);
            const Rational budget = ratio * in_bounds.upper + Rational(1, 64);
            const Rational margin = budget - img_curve.estimate;
            if (margin < worst_margin) worst_margin = margin;
            ok &= img_curve.estimate <= budget;
            if (name == std::string("fibonacci") && i == 0)
                write_file_atomic(outdir / "feldman_lipschitz_fibonacci.csv",
                                  curve_to_csv(img_curve));
        }
    }
    return {"feldman_lipschitz", ok,
            "120 pairs: estimate(d_L(tau x, tau y)) <= (upper/lower)*fekete + 2^-6, worst "
            "margin " +
                worst_margin.str()};
}

inline ExperimentResult exp_weyl_domination(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    SplitMix64 rng(0x3e71);
    bool ok = true;
    const std::vector<std::uint64_t> lengths = {16, 32, 64, 128, 256, 512, 1024};
    for (int i = 0; i < 10; ++i) {
        auto x = random_periodic(rng, kBinary);
        auto y = random_periodic(rng, kBinary);
        auto sliding = weyl_curve(DistanceKind::Hamming, x, y, lengths);
        auto centred = curve(DistanceKind::Hamming, x, y, lengths);
        for (std::size_t s = 0; s < lengths.size(); ++s)
            ok &= sliding.samples[s].normalized >= centred.samples[s].normalized;
        auto sliding_lev = weyl_curve(DistanceKind::Levenshtein, x, y, {16, 32, 64});
        for (const auto& s : sliding_lev.samples) ok &= s.normalized <= Rational(1);
        if (i == 0) write_file_atomic(outdir / "weyl_hamming.csv", curve_to_csv(sliding));
    }
    return {"weyl_domination", ok, "sliding max dominates the centred curve pointwise"};
}

inline ExperimentResult exp_simulate_figures(const std::filesystem::path& outdir) {
    using namespace verify_detail;
    const DillMap& zk = builtin_rule("zero_keep");
    const std::string ones =
        render_spacetime_ppm(zk, InfiniteWordSpec::constant(1, kBinary), 48, 96);
    const std::string mixed =
        render_spacetime_ppm(zk, InfiniteWordSpec::periodic(bw("10")), 48, 96);
    write_file_atomic(outdir / "zero_keep_ones.ppm", ones);
    write_file_atomic(outdir / "zero_keep_mixed.ppm", mixed);
    // on 1^inf the diagram is solid black (letter 1)
    std::size_t header_end = 0;
    for (int nl = 0; nl < 3; ++nl) header_end = ones.find('\n', header_end) + 1;
    bool ok = true;
    for (std::size_t i = header_end; i < ones.size(); ++i) ok &= ones[i] == '\0';
    return {"simulate_figures", ok, "zero_keep diagrams rendered; 1^inf row is solid black"};
}

inline ExperimentResult exp_shift_compose_robustness(const std::filesystem::path&) {
    using namespace verify_detail;
    bool ok = true;
    auto x = InfiniteWordSpec::periodic(bw("0110"));
    auto orbit = fixed_point(builtin_rule("thue_morse"), 0);
    for (const char* name : {"thue_morse", "doubling", "cantor", "xor", "min", "min_doubling"})
        for (std::uint64_t m : {0, 1, 2}) {
            ok &= shift_compose_invariance(builtin_rule(name), m, x, 4, 128);
            ok &= shift_compose_invariance(builtin_rule(name), m, orbit, 3, 128);
        }
    return {"shift_compose_robustness", ok,
            "(sigma^m o F)^n == sigma^{sum m*lower^k} o F^n on prefixes, uniform built-ins"};
}

// ---------------------------------------------------------------------------

inline const std::vector<
    std::pair<std::string, std::function<ExperimentResult(const std::filesystem::path&)>>>&
experiments() {
    static const std::vector<
        std::pair<std::string, std::function<ExperimentResult(const std::filesystem::path&)>>>
        all = {
            {"edit_distance_examples", exp_edit_distance_examples},
            {"oracle_equivalence", exp_oracle_equivalence},
            {"metric_properties", exp_metric_properties},
            {"matrices", exp_matrices},
            {"classifier_verdicts", exp_classifier_verdicts},
            {"regime_coverage", exp_regime_coverage},
            {"fibonacci_besicovitch", exp_fibonacci_besicovitch},
            {"thue_morse_isometry", exp_thue_morse_isometry},
            {"shift_identity_feldman", exp_shift_identity_feldman},
            {"min_doubling_instability", exp_min_doubling_instability},
            {"min_ca_instability", exp_min_ca_instability},
            {"xor_instability", exp_xor_instability},
            {"cocycle_identity", exp_cocycle_identity},
            {"feldman_lipschitz", exp_feldman_lipschitz},
            {"weyl_domination", exp_weyl_domination},
            {"simulate_figures", exp_simulate_figures},
            {"shift_compose_robustness", exp_shift_compose_robustness},
        };
    return all;
}

inline std::vector<std::string> experiment_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : experiments()) ids.push_back(id);
    return ids;
}

inline std::vector<ExperimentResult> run_experiments(const std::string& which,
                                                     const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    std::vector<ExperimentResult> results;
    bool found = false;
    for (const auto& [id, fn] : experiments()) {
        if (which != "all" && which != id) continue;
        found = true;
        try {
            results.push_back(fn(outdir));
        } catch (const std::exception& e) {
            results.push_back({id, false, std::string("exception: ") + e.what()});
        }
    }
    if (!found) throw std::invalid_argument("unknown experiment id: " + which);
    return results;
}

}  // namespace dillscope
