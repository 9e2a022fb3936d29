#pragma once

#include <functional>
#include <string>

#include "dillscope/builtins.hpp"
#include "dillscope/dill_map.hpp"
#include "dillscope/infinite_word.hpp"

namespace dillscope {

// Text forms:
//   transient(period)^inf     e.g. (01)^inf, 1(0)^inf
//   fix(<rule-name>,<seed>)   rule-name = built-in name or rule file path
using RuleResolver = std::function<DillMap(const std::string&)>;

inline DillMap default_rule_resolver(const std::string& name) {
    if (is_builtin_rule(name)) return builtin_rule(name);
    return load_rule_file(name);
}

inline InfiniteWordSpec parse_word_spec(const std::string& text, const Alphabet& alpha,
                                        const RuleResolver& resolver = default_rule_resolver) {
    if (text.rfind("fix(", 0) == 0) {
        if (text.back() != ')') throw std::invalid_argument("bad fix(...) spec: " + text);
        const std::string inner = text.substr(4, text.size() - 5);
        const auto comma = inner.rfind(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("fix(...) needs a rule name and a seed: " + text);
        const std::string name = inner.substr(0, comma);
        const std::string seed_text = inner.substr(comma + 1);
        if (seed_text.size() != 1)
            throw std::invalid_argument("fix(...) seed must be a single glyph: " + text);
        DillMap rule = resolver(name);
        if (!rule.is_substitution())
            throw std::invalid_argument("fix(...) needs a substitution rule: " + name);
        auto seed = rule.alphabet().letter_of(seed_text[0]);
        if (!seed) throw std::invalid_argument("seed glyph outside rule alphabet: " + text);
        return fixed_point(rule, *seed);
    }
    const auto open = text.find('(');
    const auto close = text.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        text.substr(close + 1) != "^inf")
        throw std::invalid_argument("expected transient(period)^inf or fix(rule,seed): " + text);
    const std::string transient_text = text.substr(0, open);
    const std::string period_text = text.substr(open + 1, close - open - 1);
    if (period_text.empty()) throw std::invalid_argument("empty period in spec: " + text);
    return InfiniteWordSpec::eventually_periodic(Word::parse(transient_text, alpha),
                                                 Word::parse(period_text, alpha));
}

}  // namespace dillscope
