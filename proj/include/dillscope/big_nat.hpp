#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dillscope {

// Minimal unsigned bignum: just enough for occurrence-matrix powers
// (adds, multiplies, compares, decimal printing). Little-endian limbs.
class BigNat {
public:
    BigNat() = default;
    BigNat(std::uint64_t v) {
        if (v != 0) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }

    friend BigNat operator+(const BigNat& a, const BigNat& b) {
        BigNat r;
        const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
        r.limbs_.resize(n, 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned __int128 s = carry;
            if (i < a.limbs_.size()) s += a.limbs_[i];
            if (i < b.limbs_.size()) s += b.limbs_[i];
            r.limbs_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint64_t>(carry));
        return r;
    }

    BigNat& operator+=(const BigNat& b) { return *this = *this + b; }

    friend BigNat operator*(const BigNat& a, const BigNat& b) {
        BigNat r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned __int128 cur = r.limbs_[i + j];
                cur += static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j];
                cur += carry;
                r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(r.limbs_[k]) + carry;
                r.limbs_[k] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        r.trim();
        return r;
    }

    static BigNat pow2(unsigned e) {
        BigNat r;
        r.limbs_.assign(e / 64 + 1, 0);
        r.limbs_[e / 64] = std::uint64_t{1} << (e % 64);
        return r;
    }

    friend bool operator==(const BigNat& a, const BigNat& b) { return a.limbs_ == b.limbs_; }
    friend bool operator<(const BigNat& a, const BigNat& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
        return false;
    }

    // Fits-in-uint64 accessor; throws when the value is larger.
    std::uint64_t to_u64() const {
        if (limbs_.empty()) return 0;
        if (limbs_.size() > 1) throw std::overflow_error("BigNat does not fit in 64 bits");
        return limbs_[0];
    }

    bool fits_u64() const { return limbs_.size() <= 1; }

    std::string str() const {
        if (is_zero()) return "0";
        std::vector<std::uint64_t> work = limbs_;
        std::string digits;
        while (!work.empty()) {
            unsigned __int128 rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | work[i];
                work[i] = static_cast<std::uint64_t>(cur / 10);
                rem = cur % 10;
            }
            digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
            while (!work.empty() && work.back() == 0) work.pop_back();
        }
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint64_t> limbs_;
};

}  // namespace dillscope
