#include <doctest.h>

#include "dillscope/edit_distance.hpp"
#include "dillscope/prng.hpp"

using namespace dillscope;

namespace {

const Alphabet kBinary(2);
const Alphabet kTernary(3);

Word w(const std::string& s) { return Word::parse(s, kBinary); }

Word random_word(SplitMix64& rng, const Alphabet& alpha, std::size_t max_len) {
    Word u(alpha);
    const std::size_t n = rng.below(max_len + 1);
    for (std::size_t i = 0; i < n; ++i)
        u.push_back(static_cast<Letter>(rng.below(alpha.size())));
    return u;
}

std::uint64_t lcs_all_kernels_agree(const Word& u, const Word& v) {
    const std::uint64_t ref = detail::lcs_rowwise(u.view(), v.view());
    CHECK(detail::lcs_bitparallel(u.view(), v.view(), u.alphabet.size()) == ref);
    auto greedy = detail::indel_distance_greedy(u.view(), v.view(), UINT64_MAX);
    REQUIRE(greedy.has_value());
    CHECK((u.size() + v.size() - *greedy) / 2 == ref);
    CHECK(lcs_length(u, v) == ref);
    return ref;
}

}  // namespace

TEST_CASE("edit operations") {
    CHECK(apply_edit(w("010101"), EditOp::erase(0)).str() == "10101");
    CHECK(apply_edit(w("00001"), EditOp::erase(4)).str() == "0000");
    Word u = w("0110");
    CHECK(apply_edit(u, EditOp::substitute(0, u[0])) == u);
    CHECK(apply_edit(u, EditOp::substitute(1, 0)).str() == "0010");
    CHECK_THROWS_AS(apply_edit(u, EditOp::erase(4)), std::out_of_range);
    CHECK_THROWS_AS(apply_edit(u, EditOp::substitute(0, 2)), std::invalid_argument);
}

TEST_CASE("hamming") {
    CHECK(hamming(w("010101"), w("101010")) == 6);
    CHECK(hamming(w("0110"), w("0110")) == 0);
    CHECK(hamming(w("0000"), w("0001")) == 1);
    CHECK_THROWS_AS(hamming(w("01"), w("011")), std::invalid_argument);
}

TEST_CASE("lcs examples") {
    CHECK(lcs_length(w("010101"), w("101010")) == 5);
    CHECK(lcs_length(w("0110"), w("")) == 0);
    CHECK(lcs_length(w("0110"), w("0110")) == 4);
}

TEST_CASE("levenshtein examples") {
    CHECK(levenshtein(w("010101"), w("101010")) == HalfInt::whole(1));
    CHECK(levenshtein(w("0000"), w("00001")) == HalfInt::from_doubled(1));
    CHECK(levenshtein(w("0110"), w("0110")) == HalfInt::whole(0));
    CHECK(levenshtein(w(""), w("0101")) == HalfInt::whole(2));
}

TEST_CASE("kernels agree on random words") {
    SplitMix64 rng(101);
    for (int i = 0; i < 400; ++i) {
        Word u = random_word(rng, kTernary, 40);
        Word v = random_word(rng, kTernary, 40);
        lcs_all_kernels_agree(u, v);
    }
    // longer, to cross the multiword boundary in the bit-parallel kernel
    for (int i = 0; i < 20; ++i) {
        Word u = random_word(rng, kBinary, 200);
        Word v = random_word(rng, kBinary, 200);
        lcs_all_kernels_agree(u, v);
    }
}

TEST_CASE("oracle equivalence, exhaustive binary up to length 6") {
    for (std::size_t nu = 0; nu <= 6; ++nu)
        for (std::uint32_t bu = 0; bu < (1u << nu); ++bu) {
            Word u(kBinary);
            for (std::size_t i = 0; i < nu; ++i) u.push_back((bu >> i) & 1);
            for (std::size_t nv = 0; nv <= 6; ++nv)
                for (std::uint32_t bv = 0; bv < (1u << nv); ++bv) {
                    Word v(kBinary);
                    for (std::size_t i = 0; i < nv; ++i) v.push_back((bv >> i) & 1);
                    CHECK(levenshtein(u, v) == levenshtein_oracle(u, v));
                }
        }
}

TEST_CASE("triangle inequality, exhaustive binary up to length 4") {
    std::vector<Word> words;
    for (std::size_t n = 0; n <= 4; ++n)
        for (std::uint32_t b = 0; b < (1u << n); ++b) {
            Word u(kBinary);
            for (std::size_t i = 0; i < n; ++i) u.push_back((b >> i) & 1);
            words.push_back(std::move(u));
        }
    for (const Word& u : words)
        for (const Word& v : words)
            for (const Word& z : words) {
                CHECK(levenshtein(u, v).doubled <=
                      levenshtein(u, z).doubled + levenshtein(z, v).doubled);
                if (u.size() == v.size() && v.size() == z.size())
                    CHECK(hamming(u, v) <= hamming(u, z) + hamming(z, v));
            }
}

TEST_CASE("oracle edge cases") {
    CHECK(levenshtein_oracle(w(""), w("0101")) == HalfInt::whole(2));
    CHECK(levenshtein_oracle(w("010101"), w("101010")) == HalfInt::whole(1));
    CHECK_THROWS_AS(levenshtein_oracle(w("0000000000000"), w("0")), std::invalid_argument);
}

TEST_CASE("metric properties, fuzz") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 3000; ++i) {
        Word u = random_word(rng, kBinary, 24);
        Word v = random_word(rng, kBinary, 24);
        Word u2 = random_word(rng, kBinary, 24);
        Word v2 = random_word(rng, kBinary, 24);

        // symmetry
        CHECK(levenshtein(u, v) == levenshtein(v, u));
        // bounds
        const std::uint64_t diff = u.size() > v.size() ? u.size() - v.size() : v.size() - u.size();
        CHECK(levenshtein(u, v).doubled >= diff);
        CHECK(levenshtein(u, v).doubled <= u.size() + v.size());
        // subadditivity
        CHECK(levenshtein(concat(u, u2), concat(v, v2)).doubled <=
              levenshtein(u, v).doubled + levenshtein(u2, v2).doubled);
        // triangle through a third word
        Word z = random_word(rng, kBinary, 24);
        CHECK(levenshtein(u, v).doubled <=
              levenshtein(u, z).doubled + levenshtein(z, v).doubled);

        if (u.size() == v.size()) {
            CHECK(hamming(u, v) == hamming(v, u));
            CHECK(levenshtein(u, v).doubled <= 2 * hamming(u, v));
        }
        if (u.size() == v.size() && u2.size() == v2.size())
            CHECK(hamming(concat(u, u2), concat(v, v2)) == hamming(u, v) + hamming(u2, v2));
    }
}

TEST_CASE("large similar pair stays fast and exact") {
    // x vs sigma(x) style pair at one million letters
    const std::size_t n = 1'000'000;
    Word u(kBinary), v(kBinary);
    u.letters.reserve(n);
    v.letters.reserve(n);
    for (std::size_t i = 0; i < n + 1; ++i) {
        const Letter a = static_cast<Letter>((i * i + i / 3) % 2);
        if (i < n) u.letters.push_back(a);
        if (i > 0) v.letters.push_back(a);
    }
    CHECK(levenshtein(u, v).doubled <= 2);
}

TEST_CASE("half integers") {
    CHECK(HalfInt::whole(3).str() == "3");
    CHECK(HalfInt::from_doubled(3).str() == "3/2");
    CHECK(HalfInt::from_doubled(3).value() == 1.5);
    CHECK(HalfInt::whole(1) + HalfInt::from_doubled(1) == HalfInt::from_doubled(3));
    CHECK(HalfInt::from_doubled(1) < HalfInt::whole(1));
}
