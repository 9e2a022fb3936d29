#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <variant>

#include "dillscope/word.hpp"

namespace dillscope {

struct OrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// transient then period repeated forever; period is nonempty
struct EventuallyPeriodic {
    Word transient;
    Word period;
};

// One-sided fixed point of a substitution, prolonged from a seed letter.
// Requires images[seed] to start with seed; see prefix() below.
struct SubstitutionOrbit {
    Alphabet alphabet;
    std::vector<Word> images;  // one image per letter, all nonempty
    Letter seed = 0;
    std::size_t max_steps = 1u << 20;
};

// Arbitrary deterministic stream. prefix_fn(l) must return exactly l letters
// and be monotone-consistent across calls.
struct ExplicitStream {
    Alphabet alphabet;
    std::function<Word(std::uint64_t)> prefix_fn;
};

class InfiniteWordSpec {
public:
    InfiniteWordSpec(EventuallyPeriodic ep) : v_(std::move(ep)) {
        if (periodic().period.empty()) throw std::invalid_argument("period must be nonempty");
    }
    InfiniteWordSpec(SubstitutionOrbit orbit) : v_(std::move(orbit)) {
        const auto& o = std::get<SubstitutionOrbit>(v_);
        if (o.images.size() != o.alphabet.size())
            throw std::invalid_argument("orbit needs one image per letter");
        for (const auto& im : o.images)
            if (im.empty()) throw std::invalid_argument("orbit images must be nonempty");
        if (o.seed >= o.alphabet.size()) throw std::invalid_argument("seed outside alphabet");
    }
    InfiniteWordSpec(ExplicitStream s) : v_(std::move(s)) {
        if (!std::get<ExplicitStream>(v_).prefix_fn)
            throw std::invalid_argument("stream needs a prefix function");
    }

    static InfiniteWordSpec periodic(Word period) {
        Alphabet a = period.alphabet;
        return EventuallyPeriodic{Word(a), std::move(period)};
    }

    static InfiniteWordSpec eventually_periodic(Word transient, Word period) {
        return EventuallyPeriodic{std::move(transient), std::move(period)};
    }

    static InfiniteWordSpec constant(Letter a, Alphabet alpha) {
        Word p(alpha);
        p.push_back(a);
        return periodic(std::move(p));
    }

    const Alphabet& alphabet() const {
        return std::visit(
            [](const auto& s) -> const Alphabet& {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, EventuallyPeriodic>)
                    return s.period.alphabet;
                else
                    return s.alphabet;
            },
            v_);
    }

    bool is_eventually_periodic() const { return std::holds_alternative<EventuallyPeriodic>(v_); }

    // valid only when is_eventually_periodic()
    const EventuallyPeriodic& periodic() const { return std::get<EventuallyPeriodic>(v_); }

    Word prefix(std::uint64_t l) const {
        return std::visit([&](const auto& s) { return prefix_of(s, l); }, v_);
    }

    Letter at(std::uint64_t i) const {  // O(i) for non-periodic variants
        if (const auto* ep = std::get_if<EventuallyPeriodic>(&v_)) {
            if (i < ep->transient.size()) return ep->transient[i];
            return ep->period[(i - ep->transient.size()) % ep->period.size()];
        }
        return prefix(i + 1).letters.back();
    }

    std::string str() const {
        if (const auto* ep = std::get_if<EventuallyPeriodic>(&v_))
            return ep->transient.str() + "(" + ep->period.str() + ")^inf";
        if (std::holds_alternative<SubstitutionOrbit>(v_)) {
            const auto& o = std::get<SubstitutionOrbit>(v_);
            return std::string("fix(.,") + o.alphabet.glyph(o.seed) + ")";
        }
        return "[stream]";
    }

private:
    static Word prefix_of(const EventuallyPeriodic& ep, std::uint64_t l) {
        Word out(ep.period.alphabet);
        out.letters.reserve(l);
        for (std::uint64_t i = 0; i < l && i < ep.transient.size(); ++i)
            out.letters.push_back(ep.transient[i]);
        std::uint64_t i = out.letters.size();
        while (i < l) {
            out.letters.push_back(ep.period[(i - ep.transient.size()) % ep.period.size()]);
            ++i;
        }
        return out;
    }

    static Word prefix_of(const SubstitutionOrbit& o, std::uint64_t l) {
        const Word& seed_image = o.images[o.seed];
        if (seed_image.letters.front() != o.seed)
            throw OrbitError("orbit prefix not stabilizing");
        if (seed_image.size() == 1) {
            // tau(seed) = seed: the orbit is the constant word
            Word out(o.alphabet);
            out.letters.assign(l, o.seed);
            return out;
        }
        Word w(o.alphabet);
        w.letters.push_back(o.seed);
        std::size_t steps = 0;
        while (w.letters.size() < l) {
            if (++steps > o.max_steps) throw OrbitError("orbit prefix not stabilizing");
            Word next(o.alphabet);
            next.letters.reserve(std::min<std::uint64_t>(l, w.letters.size() * 2));
            for (Letter a : w.letters) {
                next.append(o.images[a]);
                if (next.letters.size() >= l) break;
            }
            w = std::move(next);
        }
        w.letters.resize(l);
        return w;
    }

    static Word prefix_of(const ExplicitStream& s, std::uint64_t l) {
        Word w = s.prefix_fn(l);
        if (w.size() != l) throw std::logic_error("stream prefix_fn returned wrong length");
        return w;
    }

    std::variant<EventuallyPeriodic, SubstitutionOrbit, ExplicitStream> v_;
};

inline Word rotate_left(const Word& p, std::size_t r) {
    r %= p.size();
    Word out(p.alphabet);
    out.letters.reserve(p.size());
    out.letters.insert(out.letters.end(), p.letters.begin() + r, p.letters.end());
    out.letters.insert(out.letters.end(), p.letters.begin(), p.letters.begin() + r);
    return out;
}

inline InfiniteWordSpec shift(const InfiniteWordSpec& x, std::uint64_t n) {
    if (n == 0) return x;
    if (x.is_eventually_periodic()) {
        const auto& ep = x.periodic();
        if (n < ep.transient.size())
            return InfiniteWordSpec::eventually_periodic(
                ep.transient.slice(n, ep.transient.size()), ep.period);
        std::size_t r = (n - ep.transient.size()) % ep.period.size();
        return InfiniteWordSpec::periodic(rotate_left(ep.period, r));
    }
    return ExplicitStream{x.alphabet(), [x, n](std::uint64_t l) {
                              Word w = x.prefix(l + n);
                              return w.slice(n, w.size());
                          }};
}

// Index of the first position where x and y disagree, inspecting at most
// max_l letters; nullopt means "equal as far as inspected".
inline std::optional<std::uint64_t> first_mismatch(const InfiniteWordSpec& x,
                                                   const InfiniteWordSpec& y,
                                                   std::uint64_t max_l) {
    Word px = x.prefix(max_l), py = y.prefix(max_l);
    for (std::uint64_t i = 0; i < max_l; ++i)
        if (px[i] != py[i]) return i;
    return std::nullopt;
}

// 2^(-m) with m the first mismatch index; 0 is an upper bound meaning
// "equal on the inspected prefix".
inline double cantor_distance(const InfiniteWordSpec& x, const InfiniteWordSpec& y,
                              std::uint64_t max_l) {
    if (max_l < 1) throw std::invalid_argument("max_l must be >= 1");
    auto m = first_mismatch(x, y, max_l);
    if (!m) return 0.0;
    return std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(*m, 4096)));
}

}  // namespace dillscope
