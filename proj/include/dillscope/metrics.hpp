#pragma once

#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "dillscope/edit_distance.hpp"
#include "dillscope/infinite_word.hpp"
#include "dillscope/rational.hpp"

namespace dillscope {

enum class DistanceKind { Hamming, Levenshtein };

enum class EstimateKind { ExactPeriodic, FeketeUpperBound, TailMax };

inline const char* estimate_kind_name(EstimateKind k) {
    switch (k) {
        case EstimateKind::ExactPeriodic: return "ExactPeriodic";
        case EstimateKind::FeketeUpperBound: return "FeketeUpperBound";
        case EstimateKind::TailMax: return "TailMax";
    }
    return "?";
}

struct CurveSample {
    std::uint64_t l;
    std::uint64_t raw_doubled;  // 2*d(x_[0,l), y_[0,l)): exact for both kinds
    Rational normalized;        // raw_doubled / (2*normalizer), normalizer = l by default
};

struct DistanceCurve {
    DistanceKind kind;
    std::vector<CurveSample> samples;
    Rational estimate;
    EstimateKind estimate_kind = EstimateKind::TailMax;
};

namespace detail {

inline void check_lengths(const std::vector<std::uint64_t>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("length list must be nonempty");
    std::uint64_t prev = 0;
    for (std::uint64_t l : lengths) {
        if (l == 0) throw std::invalid_argument("length 0 is not allowed");
        if (l <= prev) throw std::invalid_argument("lengths must be strictly increasing");
        prev = l;
    }
}

inline void check_same_alphabet(const InfiniteWordSpec& x, const InfiniteWordSpec& y) {
    if (x.alphabet().size() != y.alphabet().size())
        throw std::invalid_argument("alphabet mismatch between x and y");
}

inline Rational tail_max(const std::vector<CurveSample>& samples, double tail_fraction) {
    const std::size_t n = samples.size();
    std::size_t tail = std::max<std::size_t>(
        1, static_cast<std::size_t>(static_cast<double>(n) * tail_fraction + 0.999999));
    if (tail > n) tail = n;
    Rational best(0);
    for (std::size_t i = n - tail; i < n; ++i)
        if (samples[i].normalized > best) best = samples[i].normalized;
    return best;
}

inline std::uint64_t raw_doubled_at(DistanceKind kind, std::span<const Letter> u,
                                    std::span<const Letter> v, std::size_t alphabet_size) {
    if (kind == DistanceKind::Hamming) return 2 * hamming(u, v);
    return levenshtein(u, v, alphabet_size).doubled;
}

}  // namespace detail

// Normalized distance samples d(x_l, y_l)/l plus a tail-max estimate of
// the limsup. The estimate is honest-but-crude; exact periodic routines
// below are preferred whenever the inputs allow them.
inline DistanceCurve curve(DistanceKind kind, const InfiniteWordSpec& x,
                           const InfiniteWordSpec& y, const std::vector<std::uint64_t>& lengths,
                           double tail_fraction = 0.25) {
    detail::check_lengths(lengths);
    detail::check_same_alphabet(x, y);
    const std::uint64_t l_max = lengths.back();
    const Word px = x.prefix(l_max), py = y.prefix(l_max);
    const std::size_t asize = std::max(px.alphabet.size(), py.alphabet.size());

    DistanceCurve out;
    out.kind = kind;
    out.samples.reserve(lengths.size());
    if (kind == DistanceKind::Hamming) {
        std::uint64_t mism = 0;
        std::size_t next = 0;
        for (std::uint64_t i = 0; i < l_max && next < lengths.size(); ++i) {
            mism += (px[i] != py[i]);
            while (next < lengths.size() && lengths[next] == i + 1) {
                out.samples.push_back({i + 1, 2 * mism,
                                       Rational(static_cast<std::int64_t>(2 * mism),
                                                static_cast<std::int64_t>(2 * (i + 1)))});
                ++next;
            }
        }
    } else {
        for (std::uint64_t l : lengths) {
            const std::uint64_t d =
                detail::raw_doubled_at(kind, px.view().subspan(0, l), py.view().subspan(0, l), asize);
            out.samples.push_back({l, d,
                                   Rational(static_cast<std::int64_t>(d),
                                            static_cast<std::int64_t>(2 * l))});
        }
    }
    out.estimate = detail::tail_max(out.samples, tail_fraction);
    out.estimate_kind = EstimateKind::TailMax;
    return out;
}

struct JointPeriodicFrame {
    std::uint64_t transient;  // max of the two transient lengths
    std::uint64_t period;     // lcm of the two period lengths
};

inline JointPeriodicFrame joint_periodic_frame(const InfiniteWordSpec& x,
                                               const InfiniteWordSpec& y) {
    if (!x.is_eventually_periodic() || !y.is_eventually_periodic())
        throw std::invalid_argument("exact periodic route needs eventually periodic inputs");
    const auto& ex = x.periodic();
    const auto& ey = y.periodic();
    const std::uint64_t t = std::max(ex.transient.size(), ey.transient.size());
    const std::uint64_t p = std::lcm<std::uint64_t>(ex.period.size(), ey.period.size());
    if (p > 10'000'000) throw std::invalid_argument("joint period too large for exact route");
    return {t, p};
}

// The Besicovitch pseudo-metric of two eventually periodic words is a true
// limit: the Hamming mismatch density over one joint period past both
// transients.
inline Rational besicovitch_exact_periodic(const InfiniteWordSpec& x, const InfiniteWordSpec& y) {
    detail::check_same_alphabet(x, y);
    const auto frame = joint_periodic_frame(x, y);
    const Word px = x.prefix(frame.transient + frame.period);
    const Word py = y.prefix(frame.transient + frame.period);
    std::uint64_t mism = 0;
    for (std::uint64_t i = frame.transient; i < frame.transient + frame.period; ++i)
        mism += (px[i] != py[i]);
    return Rational(static_cast<std::int64_t>(mism), static_cast<std::int64_t>(frame.period));
}

struct FeldmanBounds {
    Rational upper;                                            // certified limsup upper bound
    std::vector<std::pair<std::uint64_t, Rational>> per_block; // (block count, bound)
    Rational tail_estimate;                                    // from the sampled curve
    DistanceCurve curve;
};

// Subadditivity makes d_L over n aligned joint-period blocks, divided by
// the block span, an upper bound on the Feldman limsup; larger n can only
// sharpen it along a doubling schedule.
inline FeldmanBounds feldman_periodic_bounds(
    const InfiniteWordSpec& x, const InfiniteWordSpec& y,
    const std::vector<std::uint64_t>& block_counts = {1, 2, 4, 8, 16, 32},
    const std::vector<std::uint64_t>& lengths = {64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384}) {
    detail::check_same_alphabet(x, y);
    if (block_counts.empty()) throw std::invalid_argument("need at least one block count");
    const auto frame = joint_periodic_frame(x, y);
    const std::uint64_t T = frame.transient, P = frame.period;
    const std::size_t asize = x.alphabet().size();

    FeldmanBounds out;
    const std::uint64_t n_max = *std::max_element(block_counts.begin(), block_counts.end());
    const Word px = x.prefix(T + n_max * P), py = y.prefix(T + n_max * P);
    Rational best(1);
    std::uint64_t best_n = block_counts.front();
    for (std::uint64_t n : block_counts) {
        const std::uint64_t d = levenshtein(px.view().subspan(T, n * P),
                                            py.view().subspan(T, n * P), asize)
                                    .doubled;
        Rational bound(static_cast<std::int64_t>(d), static_cast<std::int64_t>(2 * n * P));
        out.per_block.emplace_back(n, bound);
        if (bound < best) {
            best = bound;
            best_n = n;
        }
    }
    out.upper = best;
    out.curve = curve(DistanceKind::Levenshtein, x, y, lengths);
    out.tail_estimate = out.curve.estimate;
    // guaranteed by subadditive block decomposition; a violation is a bug
    const std::uint64_t l_tail_min =
        out.curve.samples[out.curve.samples.size() -
                          std::max<std::size_t>(1, (out.curve.samples.size() + 3) / 4)]
            .l;
    const Rational slack(static_cast<std::int64_t>(T + best_n * P),
                         static_cast<std::int64_t>(l_tail_min));
    if (out.tail_estimate > out.upper + slack)
        throw std::logic_error("Fekete bound inconsistent with sampled curve");
    return out;
}

// Generic centred pseudo-metric: caller supplies the finite-word distance
// (doubled, to stay exact on half-integers) and the normalizer
// max_{u,v in A^l} d(u,v) (doubled as well).
struct DistancePlugin {
    std::function<std::uint64_t(std::span<const Letter>, std::span<const Letter>)> doubled;
    std::function<std::uint64_t(std::uint64_t)> max_doubled;
};

inline DistancePlugin hamming_plugin() {
    return {[](std::span<const Letter> u, std::span<const Letter> v) { return 2 * hamming(u, v); },
            [](std::uint64_t l) { return 2 * l; }};
}

inline DistancePlugin levenshtein_plugin(std::size_t alphabet_size) {
    return {[alphabet_size](std::span<const Letter> u, std::span<const Letter> v) {
                return levenshtein(u, v, alphabet_size).doubled;
            },
            [](std::uint64_t l) { return 2 * l; }};
}

inline DistanceCurve centred_pseudometric(const DistancePlugin& plugin, const InfiniteWordSpec& x,
                                          const InfiniteWordSpec& y,
                                          const std::vector<std::uint64_t>& lengths,
                                          double tail_fraction = 0.25) {
    detail::check_lengths(lengths);
    detail::check_same_alphabet(x, y);
    if (x.alphabet().size() < 2) throw std::invalid_argument("degenerate normalizer");
    const std::uint64_t l_max = lengths.back();
    const Word px = x.prefix(l_max), py = y.prefix(l_max);
    DistanceCurve out;
    out.kind = DistanceKind::Hamming;  // kind is informational here
    for (std::uint64_t l : lengths) {
        const std::uint64_t d = plugin.doubled(px.view().subspan(0, l), py.view().subspan(0, l));
        const std::uint64_t norm = plugin.max_doubled(l);
        if (norm == 0) throw std::invalid_argument("degenerate normalizer");
        out.samples.push_back(
            {l, d, Rational(static_cast<std::int64_t>(d), static_cast<std::int64_t>(norm))});
    }
    out.estimate = detail::tail_max(out.samples, tail_fraction);
    out.estimate_kind = EstimateKind::TailMax;
    return out;
}

// Sliding (Weyl) pseudo-metric samples: max over window starts of the
// normalized distance. Joint periodicity bounds the distinct windows, so
// eventually periodic inputs are required.
inline DistanceCurve weyl_curve(DistanceKind kind, const InfiniteWordSpec& x,
                                const InfiniteWordSpec& y,
                                const std::vector<std::uint64_t>& lengths,
                                double tail_fraction = 0.25) {
    detail::check_lengths(lengths);
    detail::check_same_alphabet(x, y);
    const auto frame = joint_periodic_frame(x, y);
    const std::uint64_t starts = frame.transient + frame.period;
    const std::uint64_t l_max = lengths.back();
    const Word px = x.prefix(starts + l_max), py = y.prefix(starts + l_max);
    const std::size_t asize = x.alphabet().size();

    DistanceCurve out;
    out.kind = kind;
    out.samples.reserve(lengths.size());
    if (kind == DistanceKind::Hamming) {
        std::vector<std::uint64_t> best(lengths.size(), 0);
        for (std::uint64_t k = 0; k < starts; ++k) {
            std::uint64_t mism = 0;
            std::size_t next = 0;
            for (std::uint64_t i = 0; i < l_max && next < lengths.size(); ++i) {
                mism += (px[k + i] != py[k + i]);
                while (next < lengths.size() && lengths[next] == i + 1) {
                    best[next] = std::max(best[next], mism);
                    ++next;
                }
            }
        }
        for (std::size_t s = 0; s < lengths.size(); ++s)
            out.samples.push_back({lengths[s], 2 * best[s],
                                   Rational(static_cast<std::int64_t>(2 * best[s]),
                                            static_cast<std::int64_t>(2 * lengths[s]))});
    } else {
        for (std::uint64_t l : lengths) {
            std::uint64_t best = 0;
            for (std::uint64_t k = 0; k < starts; ++k)
                best = std::max(best, detail::raw_doubled_at(kind, px.view().subspan(k, l),
                                                             py.view().subspan(k, l), asize));
            out.samples.push_back({l, best,
                                   Rational(static_cast<std::int64_t>(best),
                                            static_cast<std::int64_t>(2 * l))});
        }
    }
    out.estimate = detail::tail_max(out.samples, tail_fraction);
    out.estimate_kind = EstimateKind::TailMax;
    return out;
}

// CSV format: header, one row per sample, LF endings, 9-digit normalized,
// trailing estimate comment.
inline std::string curve_to_csv(const DistanceCurve& c) {
    std::string out = "l,raw_doubled,normalized\n";
    char buf[64];
    for (const auto& s : c.samples) {
        std::snprintf(buf, sizeof(buf), "%llu,%llu,%.9f\n",
                      static_cast<unsigned long long>(s.l),
                      static_cast<unsigned long long>(s.raw_doubled), s.normalized.value());
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "# estimate=%.9f kind=%s\n", c.estimate.value(),
                  estimate_kind_name(c.estimate_kind));
    out += buf;
    return out;
}

inline std::vector<std::uint64_t> geometric_lengths(unsigned lo_exp, unsigned hi_exp) {
    if (lo_exp > hi_exp || hi_exp > 30) throw std::invalid_argument("bad geometric range");
    std::vector<std::uint64_t> out;
    for (unsigned e = lo_exp; e <= hi_exp; ++e) out.push_back(std::uint64_t{1} << e);
    return out;
}

}  // namespace dillscope
