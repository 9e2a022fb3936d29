#pragma once

#include <cstdlib>
#include <string>

#include "dillscope/infinite_word.hpp"
#include "dillscope/word.hpp"

namespace dillscope {

struct OrbitBlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Required-input cap for orbit computations; DILLSCOPE_MAX_INPUT overrides.
inline std::uint64_t orbit_input_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("DILLSCOPE_MAX_INPUT")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{100'000'000};
    }();
    return cap;
}

// Total map from length-s windows to nonempty words. Window w0..w_{s-1} is
// indexed as a base-k number with w0 most significant, so table order is
// the lexicographic order of windows.
class LocalRule {
public:
    LocalRule(Alphabet alphabet, std::uint32_t diameter, std::vector<Word> table)
        : alphabet_(std::move(alphabet)), diameter_(diameter), table_(std::move(table)) {
        if (diameter_ < 1) throw std::invalid_argument("diameter must be >= 1");
        std::uint64_t expect = 1;
        for (std::uint32_t i = 0; i < diameter_; ++i) {
            expect *= alphabet_.size();
            if (expect > kMaxWindows) throw std::invalid_argument("window table too large");
        }
        if (table_.size() != expect)
            throw std::invalid_argument("table must cover every window");
        lower_ = table_.front().size();
        upper_ = table_.front().size();
        for (const Word& im : table_) {
            if (im.empty()) throw std::invalid_argument("rule images must be nonempty");
            for (Letter a : im.letters)
                if (a >= alphabet_.size())
                    throw std::invalid_argument("image letter outside alphabet");
            lower_ = std::min<std::uint64_t>(lower_, im.size());
            upper_ = std::max<std::uint64_t>(upper_, im.size());
        }
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::uint32_t diameter() const { return diameter_; }
    std::uint64_t lower_norm() const { return lower_; }
    std::uint64_t upper_norm() const { return upper_; }
    std::uint64_t window_count() const { return table_.size(); }
    const std::vector<Word>& table() const { return table_; }

    std::uint64_t window_index(std::span<const Letter> w) const {
        std::uint64_t idx = 0;
        for (Letter a : w) idx = idx * alphabet_.size() + a;
        return idx;
    }

    Word window_of_index(std::uint64_t idx) const {
        Word w(alphabet_);
        w.letters.assign(diameter_, 0);
        for (std::uint32_t i = diameter_; i-- > 0;) {
            w.letters[i] = static_cast<Letter>(idx % alphabet_.size());
            idx /= alphabet_.size();
        }
        return w;
    }

    const Word& image(std::span<const Letter> window) const { return table_[window_index(window)]; }
    const Word& image_at(std::uint64_t idx) const { return table_[idx]; }

    static constexpr std::uint64_t kMaxWindows = 1u << 22;

private:
    Alphabet alphabet_;
    std::uint32_t diameter_;
    std::vector<Word> table_;
    std::uint64_t lower_ = 0, upper_ = 0;
};

class DillMap {
public:
    explicit DillMap(LocalRule rule) : rule_(std::move(rule)) {
        is_substitution_ = rule_.diameter() == 1;
        is_uniform_ = rule_.lower_norm() == rule_.upper_norm();
        is_ca_ = is_uniform_ && rule_.upper_norm() == 1;
    }

    const LocalRule& rule() const { return rule_; }
    const Alphabet& alphabet() const { return rule_.alphabet(); }
    std::uint32_t diameter() const { return rule_.diameter(); }
    std::uint64_t lower_norm() const { return rule_.lower_norm(); }
    std::uint64_t upper_norm() const { return rule_.upper_norm(); }

    bool is_substitution() const { return is_substitution_; }
    bool is_ca() const { return is_ca_; }
    bool is_uniform() const { return is_uniform_; }

private:
    LocalRule rule_;
    bool is_substitution_, is_ca_, is_uniform_;
};

// f*(u): images of all sliding windows, concatenated; empty when |u| < s.
inline Word f_star(const DillMap& F, const Word& u) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    Word out(f.alphabet());
    if (u.size() < s) return out;
    const std::size_t windows = u.size() - s + 1;
    out.letters.reserve(windows * f.lower_norm());
    for (std::size_t i = 0; i < windows; ++i)
        out.append(f.image(u.view().subspan(i, s)));
    return out;
}

// theta_n(x) = |f*(x_[0,n+s))|, the output offset after windows 0..n.
inline std::uint64_t cocycle(const DillMap& F, const InfiniteWordSpec& x, std::uint64_t n) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    Word p = x.prefix(n + s);
    std::uint64_t total = 0;
    for (std::uint64_t j = 0; j <= n; ++j) total += f.image(p.view().subspan(j, s)).size();
    return total;
}

// First l_out letters of F(x).
inline Word apply(const DillMap& F, const InfiniteWordSpec& x, std::uint64_t l_out) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    Word out(f.alphabet());
    if (l_out == 0) return out;
    const std::uint64_t need = (l_out + f.lower_norm() - 1) / f.lower_norm() + s - 1;
    if (need > orbit_input_cap()) throw OrbitBlowupError("orbit blow-up");
    Word in = x.prefix(need);
    out.letters.reserve(l_out + f.upper_norm());
    for (std::size_t i = 0; i + s <= in.size() && out.size() < l_out; ++i)
        out.append(f.image(in.view().subspan(i, s)));
    if (out.size() < l_out) throw std::logic_error("apply produced too few letters");
    out.letters.resize(l_out);
    return out;
}

// Lazy image of x under F. Eventually periodic inputs stay eventually
// periodic with an exact transient/period; anything else becomes a stream.
inline InfiniteWordSpec apply_as_spec(const DillMap& F, const InfiniteWordSpec& x) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    if (x.is_eventually_periodic()) {
        const auto& ep = x.periodic();
        const std::size_t t = ep.transient.size();
        const std::size_t p = ep.period.size();
        // windows i >= t repeat with period p
        Word in = x.prefix(t + p + s - 1);
        Word transient_out(f.alphabet());
        for (std::size_t i = 0; i < t; ++i)
            transient_out.append(f.image(in.view().subspan(i, s)));
        Word period_out(f.alphabet());
        for (std::size_t i = t; i < t + p; ++i)
            period_out.append(f.image(in.view().subspan(i, s)));
        return InfiniteWordSpec::eventually_periodic(std::move(transient_out),
                                                     std::move(period_out));
    }
    return ExplicitStream{f.alphabet(),
                          [F, x](std::uint64_t l) { return apply(F, x, l); }};
}

// Prefix of F^t(x) of length l_out, via backward input-length accounting:
// step k needs ceil(n_{k+1}/lower)+s-1 letters to emit n_{k+1}.
inline Word iterate(const DillMap& F, const InfiniteWordSpec& x, std::uint64_t t,
                    std::uint64_t l_out) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    if (t == 0) return x.prefix(l_out);
    std::vector<std::uint64_t> needed(t + 1);
    needed[t] = l_out;
    for (std::uint64_t k = t; k-- > 0;) {
        needed[k] = (needed[k + 1] + f.lower_norm() - 1) / f.lower_norm() + s - 1;
        if (needed[k] > orbit_input_cap()) throw OrbitBlowupError("orbit blow-up");
    }
    Word w = x.prefix(needed[0]);
    for (std::uint64_t k = 0; k < t; ++k) {
        Word next(f.alphabet());
        next.letters.reserve(needed[k + 1] + f.upper_norm());
        for (std::size_t i = 0; i + s <= w.size() && next.size() < needed[k + 1]; ++i)
            next.append(f.image(w.view().subspan(i, s)));
        if (next.size() < needed[k + 1]) throw std::logic_error("iterate underproduced");
        next.letters.resize(needed[k + 1]);
        w = std::move(next);
    }
    return w;
}

// F(sigma^n(x)) == sigma^theta(F(x)) with theta = cocycle(F, x, n-1),
// compared on the first l output letters.
inline bool check_cocycle_identity(const DillMap& F, const InfiniteWordSpec& x, std::uint64_t n,
                                   std::uint64_t l) {
    const std::uint64_t theta = (n == 0) ? 0 : cocycle(F, x, n - 1);
    Word lhs = apply(F, shift(x, n), l);
    Word rhs = apply(F, x, l + theta).slice(theta, theta + l);
    return lhs == rhs;
}

namespace detail {

// Suffix-aligned pair of equal-length words whose f*-images have different
// lengths, for a nonuniform rule. First mismatching window pair in
// lexicographic order seeds the construction.
inline std::pair<Word, Word> nonuniform_suffix_aligned_pair(const DillMap& F) {
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();
    std::uint64_t iu = 0, iv = 0;
    bool found = false;
    for (std::uint64_t i = 0; i < f.window_count() && !found; ++i)
        for (std::uint64_t j = 0; j < f.window_count() && !found; ++j)
            if (f.image_at(i).size() != f.image_at(j).size()) {
                iu = i;
                iv = j;
                found = true;
            }
    if (!found) throw std::logic_error("rule is uniform");
    Word wu = f.window_of_index(iu), wv = f.window_of_index(iv);
    Word pad(f.alphabet());
    pad.letters.assign(s - 1, 0);
    Word u1 = concat(wu, pad), v1 = concat(wv, pad);
    if (f_star(F, u1).size() != f_star(F, v1).size()) return {u1, v1};
    Word u2 = concat(wu.slice(1, s), pad), v2 = concat(wv.slice(1, s), pad);
    if (f_star(F, u2).size() == f_star(F, v2).size())
        throw std::logic_error("suffix alignment failed");
    return {u2, v2};
}

inline bool word_is_periodic_with(const Word& w, std::uint64_t k) {
    for (std::size_t i = 0; i + k < w.size(); ++i)
        if (w[i] != w[i + k]) return false;
    return true;
}

// Enumerate all words of a given length, calling fn on each; fn returns
// false to stop early. Returns false on early stop.
template <class Fn>
bool for_each_word(const Alphabet& alpha, std::size_t len, Fn&& fn) {
    Word w(alpha);
    w.letters.assign(len, 0);
    while (true) {
        if (!fn(const_cast<const Word&>(w))) return false;
        std::size_t i = len;
        while (i > 0) {
            if (++w.letters[i - 1] < alpha.size()) break;
            w.letters[i - 1] = 0;
            --i;
        }
        if (i == 0) return true;
    }
}

}  // namespace detail

// True iff F(x) is the same infinite word for every x. Uniform rules are
// constant exactly when every image coincides; nonuniform ones reduce to a
// k-periodicity check of f* over all words of a bounded length L, where k
// is the image-length gap of a suffix-aligned pair. Any length-(k+1)
// output window of any f*(w) already occurs in f*(v) for some factor v
// with |v| <= L, because each input letter emits at least lower_norm
// letters, so the bounded check decides the general property.
inline bool is_constant(const DillMap& F) {
    const LocalRule& f = F.rule();
    if (F.is_uniform()) {
        for (std::uint64_t i = 1; i < f.window_count(); ++i)
            if (!(f.image_at(i) == f.image_at(0))) return false;
        return true;
    }
    auto [u, v] = detail::nonuniform_suffix_aligned_pair(F);
    const std::uint64_t lu = f_star(F, u).size(), lv = f_star(F, v).size();
    const std::uint64_t k = lu > lv ? lu - lv : lv - lu;
    const std::uint64_t L = f.diameter() + (k + 1 + f.lower_norm() - 1) / f.lower_norm() + 1;
    double combos = 1;
    for (std::uint64_t i = 0; i < L; ++i) combos *= static_cast<double>(f.alphabet().size());
    if (combos > static_cast<double>(1u << 24))
        throw std::runtime_error("constancy check too large for this alphabet/rule");
    return detail::for_each_word(f.alphabet(), L, [&](const Word& w) {
        return detail::word_is_periodic_with(f_star(F, w), k);
    });
}

// Substitution-after-CA composition: window table u -> tau(g(u)).
inline DillMap compose_subst_ca(const DillMap& tau, const DillMap& g) {
    if (!tau.is_substitution()) throw std::invalid_argument("first argument must be a substitution");
    if (!g.is_ca()) throw std::invalid_argument("second argument must be a cellular automaton");
    if (tau.alphabet().size() != g.alphabet().size())
        throw std::invalid_argument("alphabet mismatch");
    std::vector<Word> table;
    table.reserve(g.rule().window_count());
    for (std::uint64_t i = 0; i < g.rule().window_count(); ++i) {
        Letter out = g.rule().image_at(i)[0];
        table.push_back(tau.rule().image_at(out));
    }
    return DillMap(LocalRule(g.alphabet(), g.diameter(), std::move(table)));
}

// Convert a substitution into the orbit spec of its one-sided fixed point.
inline InfiniteWordSpec fixed_point(const DillMap& tau, Letter seed) {
    if (!tau.is_substitution()) throw std::invalid_argument("fixed_point needs a substitution");
    return SubstitutionOrbit{tau.alphabet(), tau.rule().table(), seed};
}

}  // namespace dillscope
