#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dillscope/dill_map.hpp"

namespace dillscope {

struct RuleParseError : std::runtime_error {
    std::size_t line;
    RuleParseError(std::size_t ln, const std::string& msg)
        : std::runtime_error(msg), line(ln) {}
};

namespace detail {

inline std::string trim(std::string s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Text rule format:
//   alphabet=01
//   diameter=2
//   00 -> 01
//   ... one line per window, all k^s windows required
inline DillMap parse_rule_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    std::optional<Alphabet> alpha;
    std::optional<std::uint32_t> diameter;
    std::vector<bool> seen;
    std::vector<Word> table;

    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (!alpha) {
            if (s.rfind("alphabet=", 0) != 0)
                throw RuleParseError(lineno, "expected 'alphabet=<glyphs>'");
            std::string glyphs = detail::trim(s.substr(9));
            if (glyphs.empty()) throw RuleParseError(lineno, "empty alphabet");
            try {
                alpha = Alphabet(glyphs.size(), glyphs);
            } catch (const std::exception& e) {
                throw RuleParseError(lineno, e.what());
            }
            continue;
        }
        if (!diameter) {
            if (s.rfind("diameter=", 0) != 0)
                throw RuleParseError(lineno, "expected 'diameter=<s>'");
            std::string num = detail::trim(s.substr(9));
            std::size_t pos = 0;
            int d = 0;
            try {
                d = std::stoi(num, &pos);
            } catch (const std::exception&) {
                throw RuleParseError(lineno, "diameter is not a number");
            }
            if (pos != num.size() || d < 1 || d > 16)
                throw RuleParseError(lineno, "diameter must be an integer in [1,16]");
            diameter = static_cast<std::uint32_t>(d);
            std::uint64_t windows = 1;
            for (std::uint32_t i = 0; i < *diameter; ++i) {
                windows *= alpha->size();
                if (windows > LocalRule::kMaxWindows)
                    throw RuleParseError(lineno, "window table too large");
            }
            seen.assign(windows, false);
            table.assign(windows, Word(*alpha));
            continue;
        }
        auto arrow = s.find("->");
        if (arrow == std::string::npos)
            throw RuleParseError(lineno, "expected 'window -> image'");
        std::string wtext = detail::trim(s.substr(0, arrow));
        std::string itext = detail::trim(s.substr(arrow + 2));
        if (wtext.size() != *diameter)
            throw RuleParseError(lineno, "window length does not match diameter");
        if (itext.empty()) throw RuleParseError(lineno, "empty image");
        Word window(*alpha), image(*alpha);
        try {
            window = Word::parse(wtext, *alpha);
            image = Word::parse(itext, *alpha);
        } catch (const std::exception& e) {
            throw RuleParseError(lineno, e.what());
        }
        std::uint64_t idx = 0;
        for (Letter a : window.letters) idx = idx * alpha->size() + a;
        if (seen[idx]) throw RuleParseError(lineno, "duplicate window '" + wtext + "'");
        seen[idx] = true;
        table[idx] = std::move(image);
    }

    if (!alpha) throw RuleParseError(lineno, "missing 'alphabet=' header");
    if (!diameter) throw RuleParseError(lineno, "missing 'diameter=' header");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) {
            LocalRule probe(*alpha, *diameter, std::vector<Word>(seen.size(), [&] {
                                Word w(*alpha);
                                w.push_back(0);
                                return w;
                            }()));
            throw RuleParseError(lineno, "missing window '" + probe.window_of_index(i).str() + "'");
        }
    return DillMap(LocalRule(*alpha, *diameter, std::move(table)));
}

inline DillMap load_rule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open rule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rule_text(buf.str());
}

inline std::string rule_to_text(const DillMap& F) {
    std::ostringstream out;
    out << "alphabet=" << F.alphabet().glyphs() << "\n";
    out << "diameter=" << F.diameter() << "\n";
    for (std::uint64_t i = 0; i < F.rule().window_count(); ++i)
        out << F.rule().window_of_index(i).str() << " -> " << F.rule().image_at(i).str() << "\n";
    return out.str();
}

}  // namespace dillscope
