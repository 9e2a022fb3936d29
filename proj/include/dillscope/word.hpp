#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dillscope {

using Letter = std::uint8_t;

// Letters are dense indices 0..k-1; glyphs matter only at I/O boundaries.
class Alphabet {
public:
    Alphabet() : Alphabet(2) {}

    explicit Alphabet(std::size_t size) : size_(size) {
        if (size_ < 1 || size_ > kMaxSize)
            throw std::invalid_argument("alphabet size must be in [1, 36]");
        glyphs_.assign(kDefaultGlyphs.substr(0, size_));
    }

    Alphabet(std::size_t size, std::string glyphs) : size_(size), glyphs_(std::move(glyphs)) {
        if (size_ < 1 || size_ > kMaxSize)
            throw std::invalid_argument("alphabet size must be in [1, 36]");
        if (glyphs_.size() != size_)
            throw std::invalid_argument("glyph count does not match alphabet size");
        for (std::size_t i = 0; i < glyphs_.size(); ++i)
            for (std::size_t j = i + 1; j < glyphs_.size(); ++j)
                if (glyphs_[i] == glyphs_[j])
                    throw std::invalid_argument("duplicate glyph in alphabet");
    }

    std::size_t size() const { return size_; }

    char glyph(Letter a) const {
        if (a >= size_) throw std::out_of_range("letter outside alphabet");
        return glyphs_[a];
    }

    std::optional<Letter> letter_of(char c) const {
        auto pos = glyphs_.find(c);
        if (pos == std::string::npos) return std::nullopt;
        return static_cast<Letter>(pos);
    }

    const std::string& glyphs() const { return glyphs_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

    static constexpr std::size_t kMaxSize = 36;

private:
    static constexpr std::string_view kDefaultGlyphs = "0123456789abcdefghijklmnopqrstuvwxyz";

    std::size_t size_;
    std::string glyphs_;
};

// A finite word over an alphabet. The empty word has letters.empty().
struct Word {
    Alphabet alphabet{};
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(Alphabet a) : alphabet(std::move(a)) {}
    Word(Alphabet a, std::vector<Letter> ls) : alphabet(std::move(a)), letters(std::move(ls)) {
        for (Letter x : letters)
            if (x >= alphabet.size()) throw std::invalid_argument("letter outside alphabet");
    }

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](std::size_t i) const { return letters[i]; }

    std::span<const Letter> view() const { return {letters.data(), letters.size()}; }

    // letters [from, to)
    Word slice(std::size_t from, std::size_t to) const {
        if (from > to || to > letters.size()) throw std::out_of_range("bad slice bounds");
        return {alphabet, std::vector<Letter>(letters.begin() + from, letters.begin() + to)};
    }

    Word prefix(std::size_t l) const { return slice(0, std::min(l, letters.size())); }

    std::uint64_t count(Letter a) const {
        return static_cast<std::uint64_t>(std::count(letters.begin(), letters.end(), a));
    }

    Word& append(const Word& w) {
        letters.insert(letters.end(), w.letters.begin(), w.letters.end());
        return *this;
    }

    Word& push_back(Letter a) {
        if (a >= alphabet.size()) throw std::invalid_argument("letter outside alphabet");
        letters.push_back(a);
        return *this;
    }

    std::string str() const {
        std::string s;
        s.reserve(letters.size());
        for (Letter a : letters) s.push_back(alphabet.glyph(a));
        return s;
    }

    static Word parse(std::string_view text, const Alphabet& alpha) {
        Word w(alpha);
        w.letters.reserve(text.size());
        for (char c : text) {
            auto a = alpha.letter_of(c);
            if (!a) throw std::invalid_argument(std::string("glyph '") + c + "' not in alphabet");
            w.letters.push_back(*a);
        }
        return w;
    }

    friend bool operator==(const Word& u, const Word& v) {
        return u.alphabet.size() == v.alphabet.size() && u.letters == v.letters;
    }
};

inline Word concat(const Word& u, const Word& v) {
    Word w = u;
    w.append(v);
    return w;
}

inline Word repeat(const Word& p, std::size_t times) {
    Word w(p.alphabet);
    w.letters.reserve(p.size() * times);
    for (std::size_t i = 0; i < times; ++i) w.append(p);
    return w;
}

}  // namespace dillscope
