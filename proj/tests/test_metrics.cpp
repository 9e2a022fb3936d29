#include <doctest.h>

#include "dillscope/builtins.hpp"
#include "dillscope/metrics.hpp"
#include "dillscope/prng.hpp"

using namespace dillscope;

namespace {

const Alphabet kBinary(2);

Word w(const std::string& s) { return Word::parse(s, kBinary); }

InfiniteWordSpec random_periodic(SplitMix64& rng, std::size_t max_t = 3, std::size_t max_p = 8) {
    Word t(kBinary), p(kBinary);
    const std::size_t tl = rng.below(max_t + 1);
    const std::size_t pl = 1 + rng.below(max_p);
    for (std::size_t i = 0; i < tl; ++i) t.push_back(static_cast<Letter>(rng.below(2)));
    for (std::size_t i = 0; i < pl; ++i) p.push_back(static_cast<Letter>(rng.below(2)));
    return InfiniteWordSpec::eventually_periodic(t, p);
}

const std::vector<std::uint64_t> kLengths = {16, 32, 64, 128, 256};

}  // namespace

TEST_CASE("hamming curve on alternating pair") {
    auto x = InfiniteWordSpec::periodic(w("01"));
    auto y = InfiniteWordSpec::periodic(w("10"));
    auto c = curve(DistanceKind::Hamming, x, y, kLengths);
    for (const auto& s : c.samples) CHECK(s.normalized == Rational(1));
    CHECK(c.estimate == Rational(1));
    CHECK(c.estimate_kind == EstimateKind::TailMax);
}

TEST_CASE("levenshtein curve of x against its shift") {
    SplitMix64 rng(404);
    for (int i = 0; i < 10; ++i) {
        auto x = random_periodic(rng);
        auto c = curve(DistanceKind::Levenshtein, x, shift(x, 1), kLengths);
        for (const auto& s : c.samples)
            CHECK(s.normalized <= Rational(1, static_cast<std::int64_t>(s.l)));
    }
}

TEST_CASE("single difference washes out") {
    auto x = InfiniteWordSpec::constant(0, kBinary);
    auto y = InfiniteWordSpec::eventually_periodic(w("1"), w("0"));
    auto c = curve(DistanceKind::Hamming, x, y, kLengths);
    for (const auto& s : c.samples)
        CHECK(s.normalized == Rational(1, static_cast<std::int64_t>(s.l)));
}

TEST_CASE("curve input validation") {
    auto x = InfiniteWordSpec::periodic(w("01"));
    CHECK_THROWS_AS(curve(DistanceKind::Hamming, x, x, {}), std::invalid_argument);
    CHECK_THROWS_AS(curve(DistanceKind::Hamming, x, x, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(curve(DistanceKind::Hamming, x, x, {8, 4}), std::invalid_argument);
    auto z = InfiniteWordSpec::constant(0, Alphabet(3));
    CHECK_THROWS_AS(curve(DistanceKind::Hamming, x, z, kLengths), std::invalid_argument);
}

TEST_CASE("besicovitch exact periodic") {
    CHECK(besicovitch_exact_periodic(InfiniteWordSpec::periodic(w("01")),
                                     InfiniteWordSpec::periodic(w("10"))) == Rational(1));
    auto x = InfiniteWordSpec::periodic(w("0110"));
    auto x2 = InfiniteWordSpec::eventually_periodic(w("111"), w("1100"));
    // same tail up to alignment: 111 1100 1100... vs 0110 0110...: different
    // transients but both end in the same rotated period
    CHECK(besicovitch_exact_periodic(x, x) == Rational(0));
    CHECK(besicovitch_exact_periodic(
              InfiniteWordSpec::periodic(w("1110")),
              InfiniteWordSpec::constant(1, kBinary)) == Rational(1, 4));
    CHECK(besicovitch_exact_periodic(x2, x2) == Rational(0));
    // finitely many differences: distance zero
    auto y1 = InfiniteWordSpec::eventually_periodic(w("10101"), w("01"));
    auto y2 = InfiniteWordSpec::eventually_periodic(w("000"), w("10"));
    // tails: y1 = 10101 010101..., y2 = 000 101010...; align and compare
    CHECK(besicovitch_exact_periodic(y1, y2).den <= 2);
}

TEST_CASE("fekete bounds") {
    auto x = InfiniteWordSpec::periodic(w("01"));
    SUBCASE("identical inputs") {
        auto b = feldman_periodic_bounds(x, x);
        CHECK(b.upper == Rational(0));
        CHECK(b.tail_estimate == Rational(0));
    }
    SUBCASE("opposite constants") {
        auto b = feldman_periodic_bounds(InfiniteWordSpec::constant(0, kBinary),
                                         InfiniteWordSpec::constant(1, kBinary));
        CHECK(b.upper == Rational(1));
    }
    SUBCASE("alternating against swapped") {
        auto b = feldman_periodic_bounds(x, InfiniteWordSpec::periodic(w("10")));
        REQUIRE(!b.per_block.empty());
        CHECK(b.per_block.front().second <= Rational(1, 2));
        // doubling block counts can only sharpen the bound
        Rational prev = b.per_block.front().second;
        for (const auto& [n, bound] : b.per_block) {
            CHECK(bound <= prev);
            prev = bound;
        }
        CHECK(b.upper <= Rational(1, 4));  // actual Feldman distance is small here
    }
}

TEST_CASE("centred pseudometric") {
    auto x = InfiniteWordSpec::periodic(w("0110"));
    auto y = InfiniteWordSpec::periodic(w("1001"));
    auto via_plugin = centred_pseudometric(hamming_plugin(), x, y, kLengths);
    auto direct = curve(DistanceKind::Hamming, x, y, kLengths);
    REQUIRE(via_plugin.samples.size() == direct.samples.size());
    for (std::size_t i = 0; i < direct.samples.size(); ++i)
        CHECK(via_plugin.samples[i].normalized == direct.samples[i].normalized);

    auto lev = centred_pseudometric(levenshtein_plugin(2), InfiniteWordSpec::constant(0, kBinary),
                                    InfiniteWordSpec::constant(1, kBinary), kLengths);
    for (const auto& s : lev.samples) CHECK(s.normalized == Rational(1));

    auto self = centred_pseudometric(levenshtein_plugin(2), x, x, kLengths);
    for (const auto& s : self.samples) CHECK(s.normalized == Rational(0));

    auto unary = InfiniteWordSpec::constant(0, Alphabet(1));
    CHECK_THROWS_AS(centred_pseudometric(hamming_plugin(), unary, unary, kLengths),
                    std::invalid_argument);
}

TEST_CASE("weyl curve") {
    auto x = InfiniteWordSpec::periodic(w("0110"));
    auto self = weyl_curve(DistanceKind::Hamming, x, x, kLengths);
    for (const auto& s : self.samples) CHECK(s.normalized == Rational(0));

    // sliding max dominates the centred curve
    SplitMix64 rng(77);
    for (int i = 0; i < 10; ++i) {
        auto a = random_periodic(rng);
        auto b = random_periodic(rng);
        auto sliding = weyl_curve(DistanceKind::Hamming, a, b, kLengths);
        auto centred = curve(DistanceKind::Hamming, a, b, kLengths);
        for (std::size_t s = 0; s < kLengths.size(); ++s)
            CHECK(sliding.samples[s].normalized >= centred.samples[s].normalized);
    }

    // one isolated difference: every window carries at most one mismatch
    auto zeros = InfiniteWordSpec::constant(0, kBinary);
    auto one = InfiniteWordSpec::eventually_periodic(w("1"), w("0"));
    auto c = weyl_curve(DistanceKind::Hamming, zeros, one, kLengths);
    for (const auto& s : c.samples)
        CHECK(s.normalized <= Rational(1, static_cast<std::int64_t>(s.l)));

    auto stream = ExplicitStream{kBinary, [](std::uint64_t l) {
                                     Word p(kBinary);
                                     p.letters.assign(l, 0);
                                     return p;
                                 }};
    CHECK_THROWS_AS(weyl_curve(DistanceKind::Hamming, InfiniteWordSpec(stream), zeros, kLengths),
                    std::invalid_argument);
}

TEST_CASE("weyl hamming fast path equals brute force") {
    SplitMix64 rng(123);
    const std::vector<std::uint64_t> lengths = {3, 5, 9, 17, 33};
    for (int i = 0; i < 20; ++i) {
        auto x = random_periodic(rng);
        auto y = random_periodic(rng);
        auto c = weyl_curve(DistanceKind::Hamming, x, y, lengths);
        const auto frame = joint_periodic_frame(x, y);
        const std::uint64_t starts = frame.transient + frame.period;
        const Word px = x.prefix(starts + lengths.back());
        const Word py = y.prefix(starts + lengths.back());
        for (std::size_t s = 0; s < lengths.size(); ++s) {
            std::uint64_t best = 0;
            for (std::uint64_t k = 0; k < starts; ++k)
                best = std::max(best, hamming(px.view().subspan(k, lengths[s]),
                                              py.view().subspan(k, lengths[s])));
            CHECK(c.samples[s].raw_doubled == 2 * best);
        }
    }
}

TEST_CASE("weyl levenshtein") {
    auto x = InfiniteWordSpec::periodic(w("01"));
    auto y = InfiniteWordSpec::periodic(w("10"));
    auto c = weyl_curve(DistanceKind::Levenshtein, x, y, {16, 32, 64});
    for (const auto& s : c.samples) {
        CHECK(s.normalized > Rational(0));
        CHECK(s.normalized <= Rational(1, 8));
    }
}

TEST_CASE("pseudo metric properties of exact periodic values") {
    SplitMix64 rng(88);
    for (int i = 0; i < 60; ++i) {
        auto a = random_periodic(rng);
        auto b = random_periodic(rng);
        auto c = random_periodic(rng);
        const Rational ab = besicovitch_exact_periodic(a, b);
        CHECK(ab == besicovitch_exact_periodic(b, a));
        CHECK(ab <= besicovitch_exact_periodic(a, c) + besicovitch_exact_periodic(c, b));
        CHECK(besicovitch_exact_periodic(a, a) == Rational(0));
        // exact shift invariance
        CHECK(besicovitch_exact_periodic(shift(a, 1), shift(b, 1)) == ab);
    }
}

TEST_CASE("feldman dominated by besicovitch pointwise") {
    SplitMix64 rng(99);
    for (int i = 0; i < 15; ++i) {
        auto a = random_periodic(rng);
        auto b = random_periodic(rng);
        auto ch = curve(DistanceKind::Hamming, a, b, kLengths);
        auto cl = curve(DistanceKind::Levenshtein, a, b, kLengths);
        for (std::size_t s = 0; s < kLengths.size(); ++s)
            CHECK(cl.samples[s].normalized <= ch.samples[s].normalized);
    }
}

TEST_CASE("feldman shift nullity") {
    SplitMix64 rng(111);
    for (int i = 0; i < 10; ++i) {
        auto x = random_periodic(rng);
        for (std::uint64_t n : {1, 2, 5}) {
            auto c = curve(DistanceKind::Levenshtein, x, shift(x, n), kLengths);
            for (const auto& s : c.samples)
                CHECK(s.normalized <=
                      Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(s.l)));
        }
    }
}

TEST_CASE("csv output format") {
    auto x = InfiniteWordSpec::periodic(w("01"));
    auto y = InfiniteWordSpec::periodic(w("10"));
    auto c = curve(DistanceKind::Hamming, x, y, {2, 4});
    CHECK(curve_to_csv(c) ==
          "l,raw_doubled,normalized\n"
          "2,4,1.000000000\n"
          "4,8,1.000000000\n"
          "# estimate=1.000000000 kind=TailMax\n");
}

TEST_CASE("geometric lengths") {
    CHECK(geometric_lengths(3, 5) == std::vector<std::uint64_t>{8, 16, 32});
    CHECK_THROWS_AS(geometric_lengths(5, 3), std::invalid_argument);
}
