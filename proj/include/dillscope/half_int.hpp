#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "dillscope/rational.hpp"

namespace dillscope {

// Exact nonnegative half-integer, stored as twice its value.
struct HalfInt {
    std::uint64_t doubled = 0;

    static HalfInt from_doubled(std::uint64_t d) { return HalfInt{d}; }
    static HalfInt whole(std::uint64_t n) { return HalfInt{2 * n}; }
    static HalfInt half() { return HalfInt{1}; }

    bool is_whole() const { return doubled % 2 == 0; }
    double value() const { return static_cast<double>(doubled) / 2.0; }
    Rational rational() const { return Rational(static_cast<std::int64_t>(doubled), 2); }

    std::string str() const {
        if (is_whole()) return std::to_string(doubled / 2);
        return std::to_string(doubled) + "/2";
    }

    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.doubled + b.doubled}; }
    HalfInt& operator+=(HalfInt b) {
        doubled += b.doubled;
        return *this;
    }
    friend auto operator<=>(HalfInt, HalfInt) = default;
};

}  // namespace dillscope
