#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>

#include "dillscope/half_int.hpp"
#include "dillscope/word.hpp"

namespace dillscope {

enum class EditKind { Substitute, Delete };

struct EditOp {
    EditKind kind;
    std::size_t pos;
    Letter letter = 0;  // substitution only

    static EditOp substitute(std::size_t j, Letter a) { return {EditKind::Substitute, j, a}; }
    static EditOp erase(std::size_t j) { return {EditKind::Delete, j, 0}; }
};

inline Word apply_edit(const Word& u, const EditOp& op) {
    if (op.pos >= u.size()) throw std::out_of_range("edit position out of range");
    Word out = u;
    if (op.kind == EditKind::Substitute) {
        if (op.letter >= u.alphabet.size())
            throw std::invalid_argument("letter outside alphabet");
        out.letters[op.pos] = op.letter;
    } else {
        out.letters.erase(out.letters.begin() + op.pos);
    }
    return out;
}

inline std::uint64_t hamming(std::span<const Letter> u, std::span<const Letter> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("hamming distance undefined across lengths");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
    return d;
}

inline std::uint64_t hamming(const Word& u, const Word& v) { return hamming(u.view(), v.view()); }

namespace detail {

// Reference quadratic LCS, rowwise. Kept as the cross-check for the two
// fast kernels below and used directly for small inputs in tests.
inline std::uint64_t lcs_rowwise(std::span<const Letter> u, std::span<const Letter> v) {
    if (u.empty() || v.empty()) return 0;
    std::vector<std::uint32_t> row(v.size() + 1, 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::uint32_t diag = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            std::uint32_t up = row[j + 1];
            row[j + 1] = (u[i] == v[j]) ? diag + 1 : std::max(row[j], up);
            diag = up;
        }
    }
    return row[v.size()];
}

// Greedy shortest-edit-script search (insertions/deletions only).
// Returns the indel distance n+m-2*lcs, or nullopt once the work budget
// is exhausted. Exact whenever it returns.
inline std::optional<std::uint64_t> indel_distance_greedy(std::span<const Letter> u,
                                                          std::span<const Letter> v,
                                                          std::uint64_t budget) {
    const std::int64_t n = static_cast<std::int64_t>(u.size());
    const std::int64_t m = static_cast<std::int64_t>(v.size());
    const std::int64_t dmax = n + m;
    std::vector<std::int64_t> fr;  // furthest x per diagonal, offset indexed
    std::uint64_t ops = 0;
    std::int64_t alloc_d = 256;
    fr.assign(2 * alloc_d + 3, 0);
    std::int64_t offset = alloc_d + 1;
    fr[offset + 1] = 0;
    for (std::int64_t d = 0; d <= dmax; ++d) {
        if (d > alloc_d) {
            std::vector<std::int64_t> bigger(2 * (2 * alloc_d) + 3, 0);
            std::int64_t noff = 2 * alloc_d + 1;
            for (std::int64_t k = -alloc_d; k <= alloc_d + 1; ++k)
                bigger[noff + k] = fr[offset + k];
            fr = std::move(bigger);
            offset = noff;
            alloc_d *= 2;
        }
        for (std::int64_t k = -d; k <= d; k += 2) {
            std::int64_t x;
            if (k == -d || (k != d && fr[offset + k - 1] < fr[offset + k + 1]))
                x = fr[offset + k + 1];
            else
                x = fr[offset + k - 1] + 1;
            std::int64_t y = x - k;
            while (x < n && y < m && u[x] == v[y]) {
                ++x;
                ++y;
                ++ops;
            }
            fr[offset + k] = x;
            ops += 4;
            if (x >= n && y >= m) return static_cast<std::uint64_t>(d);
        }
        if (ops > budget) return std::nullopt;
    }
    return static_cast<std::uint64_t>(dmax);
}

// Bit-parallel LCS row scan; pattern bits live in ceil(n/64) machine words.
inline std::uint64_t lcs_bitparallel(std::span<const Letter> u, std::span<const Letter> v,
                                     std::size_t alphabet_size) {
    const std::size_t n = u.size();
    if (n == 0 || v.empty()) return 0;
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> pm(alphabet_size * words, 0);
    for (std::size_t i = 0; i < n; ++i)
        pm[u[i] * words + i / 64] |= std::uint64_t{1} << (i % 64);

    std::vector<std::uint64_t> row(words, ~std::uint64_t{0});
    const std::uint64_t top_mask =
        (n % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n % 64)) - 1);
    row[words - 1] &= top_mask;

    for (Letter c : v) {
        const std::uint64_t* match = &pm[c * words];
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < words; ++w) {
            const std::uint64_t x = row[w];
            const std::uint64_t m = x & match[w];
            const std::uint64_t sum = x + m + carry;
            carry = (sum < x || (carry && sum == x)) ? 1 : 0;
            row[w] = sum | (x & ~m);
        }
        row[words - 1] &= top_mask;
    }
    std::uint64_t ones = 0;
    for (std::uint64_t w : row) ones += static_cast<std::uint64_t>(std::popcount(w));
    return n - ones;
}

}  // namespace detail

// Length of the longest common subsequence. Exact for any inputs; the
// kernel picks between a greedy diagonal search (fast for similar words)
// and a bit-parallel row scan (fast for dissimilar moderate ones).
inline std::uint64_t lcs_length(std::span<const Letter> u, std::span<const Letter> v,
                                std::size_t alphabet_size = 256) {
    // common affixes are free
    std::size_t lo = 0;
    while (lo < u.size() && lo < v.size() && u[lo] == v[lo]) ++lo;
    std::size_t hi = 0;
    while (hi + lo < u.size() && hi + lo < v.size() &&
           u[u.size() - 1 - hi] == v[v.size() - 1 - hi])
        ++hi;
    const std::uint64_t base = lo + hi;
    u = u.subspan(lo, u.size() - lo - hi);
    v = v.subspan(lo, v.size() - lo - hi);
    if (u.empty() || v.empty()) return base;
    if (u.size() > v.size()) std::swap(u, v);

    const std::uint64_t bitpar_ops =
        static_cast<std::uint64_t>((u.size() + 63) / 64) * v.size();
    if (bitpar_ops <= (std::uint64_t{1} << 22))
        return base + detail::lcs_bitparallel(u, v, alphabet_size);

    const std::uint64_t budget = std::min<std::uint64_t>(bitpar_ops / 2, 300'000'000);
    if (auto d = detail::indel_distance_greedy(u, v, budget))
        return base + (u.size() + v.size() - *d) / 2;
    return base + detail::lcs_bitparallel(u, v, alphabet_size);
}

inline std::uint64_t lcs_length(const Word& u, const Word& v) {
    return lcs_length(u.view(), v.view(), std::max(u.alphabet.size(), v.alphabet.size()));
}

// Levenshtein distance with the 1/2 deletion weight:
// (|u|+|v|)/2 - lcs(u,v), exact.
inline HalfInt levenshtein(std::span<const Letter> u, std::span<const Letter> v,
                           std::size_t alphabet_size = 256) {
    const std::uint64_t l = lcs_length(u, v, alphabet_size);
    return HalfInt::from_doubled(u.size() + v.size() - 2 * l);
}

inline HalfInt levenshtein(const Word& u, const Word& v) {
    return levenshtein(u.view(), v.view(), std::max(u.alphabet.size(), v.alphabet.size()));
}

// Exhaustive deletion-sequence search: enumerates every deletion subset of
// both words and minimizes the total deletion count over equal results.
// Independent of the LCS route above; words of length <= 12 only.
inline HalfInt levenshtein_oracle(const Word& u, const Word& v) {
    if (u.size() > 12 || v.size() > 12)
        throw std::invalid_argument("levenshtein_oracle limited to |u|,|v| <= 12");
    auto subsequences = [](const Word& w) {
        std::unordered_set<std::string> out;
        const std::uint32_t total = std::uint32_t{1} << w.size();
        for (std::uint32_t keep = 0; keep < total; ++keep) {
            std::string s;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (keep & (std::uint32_t{1} << i)) s.push_back(static_cast<char>(w[i]));
            out.insert(std::move(s));
        }
        return out;
    };
    const auto su = subsequences(u);
    const auto sv = subsequences(v);
    std::uint64_t best_doubled = u.size() + v.size();  // delete everything
    for (const auto& s : sv) {
        if (!su.contains(s)) continue;
        const std::uint64_t deletions = (u.size() - s.size()) + (v.size() - s.size());
        best_doubled = std::min(best_doubled, deletions);
    }
    return HalfInt::from_doubled(best_doubled);
}

}  // namespace dillscope
