#pragma once

#include <map>
#include <string>
#include <vector>

#include "dillscope/dill_map.hpp"
#include "dillscope/rule_io.hpp"

namespace dillscope {

// The built-in rules shipped with the tool. Each is also available as a
// data file under data/rules/ in the same text format.
inline const std::vector<std::pair<std::string, std::string>>& builtin_rule_texts() {
    static const std::vector<std::pair<std::string, std::string>> rules = {
        {"thue_morse",
         "alphabet=01\ndiameter=1\n0 -> 01\n1 -> 10\n"},
        {"fibonacci",
         "alphabet=01\ndiameter=1\n0 -> 01\n1 -> 0\n"},
        {"doubling",
         "alphabet=01\ndiameter=1\n0 -> 00\n1 -> 11\n"},
        {"cantor",
         "alphabet=01\ndiameter=1\n0 -> 010\n1 -> 111\n"},
        {"xor",
         "alphabet=01\ndiameter=2\n00 -> 0\n01 -> 1\n10 -> 1\n11 -> 0\n"},
        {"min",
         "alphabet=01\ndiameter=2\n00 -> 0\n01 -> 0\n10 -> 0\n11 -> 1\n"},
        {"min_doubling",
         "alphabet=01\ndiameter=2\n00 -> 00\n01 -> 00\n10 -> 00\n11 -> 11\n"},
        {"one_to_1_00",
         "alphabet=01\ndiameter=1\n0 -> 1\n1 -> 00\n"},
        {"zero_keep",
         "alphabet=01\ndiameter=1\n0 -> 0\n1 -> 11\n"},
    };
    return rules;
}

inline std::vector<std::string> builtin_rule_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : builtin_rule_texts()) names.push_back(name);
    return names;
}

inline const DillMap& builtin_rule(const std::string& name) {
    static const std::map<std::string, DillMap> cache = [] {
        std::map<std::string, DillMap> m;
        for (const auto& [n, text] : builtin_rule_texts()) m.emplace(n, parse_rule_text(text));
        return m;
    }();
    auto it = cache.find(name);
    if (it == cache.end()) throw std::invalid_argument("unknown built-in rule: " + name);
    return it->second;
}

inline bool is_builtin_rule(const std::string& name) {
    for (const auto& [n, _] : builtin_rule_texts())
        if (n == name) return true;
    return false;
}

}  // namespace dillscope
