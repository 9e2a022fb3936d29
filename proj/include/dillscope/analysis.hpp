#pragma once

#include <cmath>
#include <optional>

#include "dillscope/big_nat.hpp"
#include "dillscope/dill_map.hpp"
#include "dillscope/metrics.hpp"
#include "dillscope/rational.hpp"

namespace dillscope {

// M_ab = number of occurrences of letter b in tau(a).
struct OccurrenceMatrix {
    std::size_t k = 0;
    std::vector<std::uint64_t> entries;  // row-major

    std::uint64_t at(std::size_t a, std::size_t b) const { return entries[a * k + b]; }

    friend OccurrenceMatrix operator*(const OccurrenceMatrix& x, const OccurrenceMatrix& y) {
        OccurrenceMatrix r;
        r.k = x.k;
        r.entries.assign(x.k * x.k, 0);
        for (std::size_t a = 0; a < x.k; ++a)
            for (std::size_t c = 0; c < x.k; ++c) {
                const std::uint64_t v = x.at(a, c);
                if (!v) continue;
                for (std::size_t b = 0; b < x.k; ++b) r.entries[a * x.k + b] += v * y.at(c, b);
            }
        return r;
    }

    friend bool operator==(const OccurrenceMatrix&, const OccurrenceMatrix&) = default;
};

inline OccurrenceMatrix occurrence_matrix(const DillMap& tau) {
    if (!tau.is_substitution())
        throw std::invalid_argument("occurrence matrix needs a substitution");
    const std::size_t k = tau.alphabet().size();
    OccurrenceMatrix m;
    m.k = k;
    m.entries.assign(k * k, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (Letter b : tau.rule().image_at(a).letters) ++m.entries[a * k + b];
    return m;
}

// |tau^t(a)| as a row sum of M^t; big integers keep t <= 64 exact.
inline BigNat growth(const DillMap& tau, Letter a, unsigned t) {
    if (t > 64) throw std::invalid_argument("growth limited to t <= 64");
    const OccurrenceMatrix m = occurrence_matrix(tau);
    if (a >= m.k) throw std::invalid_argument("letter outside alphabet");
    const std::size_t k = m.k;
    // row vector (indicator of a) times M, t times
    std::vector<BigNat> row(k);
    row[a] = BigNat(1);
    for (unsigned step = 0; step < t; ++step) {
        std::vector<BigNat> next(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (row[i].is_zero()) continue;
            for (std::size_t j = 0; j < k; ++j)
                if (m.at(i, j)) next[j] += row[i] * BigNat(m.at(i, j));
        }
        row = std::move(next);
    }
    BigNat sum;
    for (const BigNat& v : row) sum += v;
    return sum;
}

struct Component {
    std::vector<Letter> letters;  // ascending
    double rho_low = 0, rho_high = 0;
    bool exact = false;      // 1x1 block, radius is an integer
    bool converged = true;   // power iteration reached tolerance
    bool terminal = false;
    bool maximum = false;
};

struct ComponentDecomposition {
    std::vector<Component> components;      // ordered by smallest letter
    std::vector<std::size_t> component_of;  // letter -> component index
    std::vector<Letter> maxal;              // ascending
    double rho_plus_low = 0, rho_plus_high = 0;
};

namespace detail {

// Collatz-Wielandt bracket via power iteration on A+I (primitive whenever
// the block is irreducible, so the bracket closes).
struct RadiusBracket {
    double lo, hi;
    bool converged;
};

inline RadiusBracket radius_bracket(const std::vector<std::uint64_t>& sub, std::size_t n,
                                    double tol, int max_iters) {
    std::vector<double> v(n, 1.0), w(n, 0.0);
    double best_lo = 0.0, best_hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = v[i];  // the +I term
            for (std::size_t j = 0; j < n; ++j) acc += static_cast<double>(sub[i * n + j]) * v[j];
            w[i] = acc;
        }
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = w[i] / v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        best_lo = std::max(best_lo, lo - 1.0);
        best_hi = std::min(best_hi, hi - 1.0);
        if (best_hi - best_lo < tol) return {best_lo, best_hi, true};
        double mx = 0.0;
        for (double x : w) mx = std::max(mx, x);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / mx;
    }
    return {best_lo, best_hi, false};
}

// Tarjan strongly connected components of the occurrence digraph.
inline std::vector<std::vector<Letter>> scc_partition(const OccurrenceMatrix& m) {
    const std::size_t k = m.k;
    std::vector<int> index(k, -1), low(k, 0);
    std::vector<bool> on_stack(k, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<Letter>> sccs;
    int counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next_child;
    };
    for (std::size_t root = 0; root < k; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            bool descended = false;
            while (f.next_child < k) {
                const std::size_t w = f.next_child++;
                if (m.at(f.v, w) == 0) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
            }
            if (descended) continue;
            if (low[f.v] == index[f.v]) {
                std::vector<Letter> comp;
                while (true) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(static_cast<Letter>(w));
                    if (w == f.v) break;
                }
                std::sort(comp.begin(), comp.end());
                sccs.push_back(std::move(comp));
            }
            const std::size_t done = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[done]);
        }
    }
    std::sort(sccs.begin(), sccs.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return sccs;
}

}  // namespace detail

inline ComponentDecomposition components(const DillMap& tau) {
    const OccurrenceMatrix m = occurrence_matrix(tau);
    const std::size_t k = m.k;
    ComponentDecomposition out;
    auto sccs = detail::scc_partition(m);
    out.component_of.assign(k, 0);
    for (std::size_t c = 0; c < sccs.size(); ++c) {
        Component comp;
        comp.letters = sccs[c];
        for (Letter a : comp.letters) out.component_of[a] = c;
        out.components.push_back(std::move(comp));
    }
    const std::size_t nc = out.components.size();

    // spectral radius per block, with certified brackets
    for (auto& comp : out.components) {
        const std::size_t n = comp.letters.size();
        if (n == 1) {
            const Letter a = comp.letters[0];
            comp.rho_low = comp.rho_high = static_cast<double>(m.at(a, a));
            comp.exact = true;
            continue;
        }
        std::vector<std::uint64_t> sub(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sub[i * n + j] = m.at(comp.letters[i], comp.letters[j]);
        auto br = detail::radius_bracket(sub, n, 1e-9, 100000);
        comp.rho_low = br.lo;
        comp.rho_high = br.hi;
        comp.converged = br.converged;
    }

    // condensation edges and terminal flags
    std::vector<std::vector<bool>> edge(nc, std::vector<bool>(nc, false));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (m.at(a, b) && out.component_of[a] != out.component_of[b])
                edge[out.component_of[a]][out.component_of[b]] = true;
    for (std::size_t c = 0; c < nc; ++c) {
        bool terminal = true;
        for (std::size_t d = 0; d < nc; ++d)
            if (edge[c][d]) terminal = false;
        out.components[c].terminal = terminal;
    }

    // maximum flags: compare certified intervals against the best lower
    // bound; overlapping intervals get one refinement round, remaining
    // overlaps count as ties
    auto rho_plus_low = [&] {
        double best = 0;
        for (const auto& c : out.components) best = std::max(best, c.rho_low);
        return best;
    };
    double plus_low = rho_plus_low();
    for (auto& comp : out.components) {
        if (comp.exact || comp.letters.size() == 1) continue;
        if (comp.rho_high >= plus_low && comp.rho_low < plus_low) {
            const std::size_t n = comp.letters.size();
            std::vector<std::uint64_t> sub(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sub[i * n + j] = m.at(comp.letters[i], comp.letters[j]);
            auto br = detail::radius_bracket(sub, n, 1e-12, 1000000);
            comp.rho_low = br.lo;
            comp.rho_high = br.hi;
            comp.converged = comp.converged && br.converged;
        }
    }
    plus_low = rho_plus_low();
    out.rho_plus_low = plus_low;
    out.rho_plus_high = 0;
    for (auto& comp : out.components) {
        comp.maximum = comp.rho_high >= plus_low;
        if (comp.maximum) out.rho_plus_high = std::max(out.rho_plus_high, comp.rho_high);
    }

    // maxal: letters whose component reaches a maximum component
    std::vector<std::vector<bool>> reach = edge;
    for (std::size_t c = 0; c < nc; ++c) reach[c][c] = true;
    for (std::size_t mid = 0; mid < nc; ++mid)
        for (std::size_t a = 0; a < nc; ++a)
            if (reach[a][mid])
                for (std::size_t b = 0; b < nc; ++b)
                    if (reach[mid][b]) reach[a][b] = true;
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t c = out.component_of[a];
        for (std::size_t d = 0; d < nc; ++d)
            if (reach[c][d] && out.components[d].maximum) {
                out.maxal.push_back(static_cast<Letter>(a));
                break;
            }
    }
    return out;
}

struct Predicates {
    bool uniform = false;
    bool ca = false;
    bool substitution = false;
    std::optional<bool> irreducible;  // substitutions only
    std::optional<bool> primitive;    // substitutions only
    std::optional<bool> toeplitz;     // uniform substitutions only
};

inline Predicates predicates(const DillMap& F) {
    Predicates p;
    p.uniform = F.is_uniform();
    p.ca = F.is_ca();
    p.substitution = F.is_substitution();
    if (!p.substitution) return p;

    const auto decomp = components(F);
    p.irreducible = decomp.components.size() == 1;

    // Wielandt bound via boolean reachability powers, no overflow
    const OccurrenceMatrix m = occurrence_matrix(F);
    const std::size_t k = m.k;
    const std::size_t wielandt = (k - 1) * (k - 1) + 1;
    std::vector<bool> cur(k * k), base(k * k);
    for (std::size_t i = 0; i < k * k; ++i) base[i] = m.entries[i] > 0;
    cur = base;
    bool prim = false;
    for (std::size_t n = 1; n <= wielandt && !prim; ++n) {
        if (n > 1) {
            std::vector<bool> next(k * k, false);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t c = 0; c < k; ++c)
                    if (cur[a * k + c])
                        for (std::size_t b = 0; b < k; ++b)
                            if (base[c * k + b]) next[a * k + b] = true;
            cur = std::move(next);
        }
        prim = std::all_of(cur.begin(), cur.end(), [](bool v) { return v; });
    }
    p.primitive = prim;

    if (p.uniform) {
        const std::uint64_t q = F.upper_norm();
        bool toep = false;
        for (std::uint64_t i = 0; i < q && !toep; ++i) {
            bool same = true;
            const Letter first = F.rule().image_at(0)[i];
            for (std::size_t a = 1; a < k; ++a)
                if (F.rule().image_at(a)[i] != first) same = false;
            toep = same;
        }
        p.toeplitz = toep;
    }
    return p;
}

enum class BesicovitchStatus { WellDefinedUniform, WellDefinedConstant, NotWellDefined };
enum class BesicovitchRegime { Contracting, Equicontinuous, Isometry, Unclassified };

inline const char* to_string(BesicovitchStatus s) {
    switch (s) {
        case BesicovitchStatus::WellDefinedUniform: return "WellDefinedUniform";
        case BesicovitchStatus::WellDefinedConstant: return "WellDefinedConstant";
        case BesicovitchStatus::NotWellDefined: return "NotWellDefined";
    }
    return "?";
}

inline const char* to_string(BesicovitchRegime r) {
    switch (r) {
        case BesicovitchRegime::Contracting: return "Contracting";
        case BesicovitchRegime::Equicontinuous: return "Equicontinuous";
        case BesicovitchRegime::Isometry: return "Isometry";
        case BesicovitchRegime::Unclassified: return "Unclassified";
    }
    return "?";
}

// Pair at exact Besicovitch distance 0 whose images stay apart; exists
// exactly when the map is not well-defined on the quotient space.
struct BesicovitchWitness {
    InfiniteWordSpec x, y;
    Rational image_distance;
};

struct BesicovitchReport {
    BesicovitchStatus status = BesicovitchStatus::NotWellDefined;
    std::optional<Rational> lipschitz;
    BesicovitchRegime regime = BesicovitchRegime::Unclassified;
    std::optional<std::uint64_t> maxd, mind;
    std::optional<BesicovitchWitness> witness;
};

namespace detail {

// Candidate pairs (x, S^a_0(x)) for periodic x plus the suffix-aligned
// construction pair; the best exact image distance wins.
inline std::optional<BesicovitchWitness> besicovitch_witness(const DillMap& F) {
    const Alphabet& alpha = F.alphabet();
    std::optional<BesicovitchWitness> best;
    auto consider = [&](const InfiniteWordSpec& x, const InfiniteWordSpec& y) {
        if (besicovitch_exact_periodic(x, y) != Rational(0)) return;  // not a class-zero pair
        Rational d = besicovitch_exact_periodic(apply_as_spec(F, x), apply_as_spec(F, y));
        if (!best || d > best->image_distance) best = BesicovitchWitness{x, y, d};
    };

    // single-letter substitutions at position 0 of short periodic words
    for (std::size_t plen = 1; plen <= 3; ++plen) {
        detail::for_each_word(alpha, plen, [&](const Word& p) {
            InfiniteWordSpec x = InfiniteWordSpec::periodic(p);
            for (Letter a = 0; a < alpha.size(); ++a) {
                if (a == p[0]) continue;
                Word t(alpha);
                t.push_back(a);
                InfiniteWordSpec y =
                    InfiniteWordSpec::eventually_periodic(t, rotate_left(p, 1 % p.size()));
                consider(x, y);
            }
            return true;
        });
    }

    // the constructive pair behind the nonuniform argument
    if (!F.is_uniform()) {
        auto [u, v] = detail::nonuniform_suffix_aligned_pair(F);
        const std::uint64_t lu = f_star(F, u).size(), lv = f_star(F, v).size();
        const std::uint64_t k = lu > lv ? lu - lv : lv - lu;
        const std::uint64_t L =
            F.diameter() + (k + 1 + F.lower_norm() - 1) / F.lower_norm() + 1;
        std::optional<Word> bad;
        detail::for_each_word(alpha, L, [&](const Word& w) {
            if (!detail::word_is_periodic_with(f_star(F, w), k)) {
                bad = w;
                return false;
            }
            return true;
        });
        if (bad) {
            consider(InfiniteWordSpec::eventually_periodic(u, *bad),
                     InfiniteWordSpec::eventually_periodic(v, *bad));
        }
    }
    return best;
}

}  // namespace detail

inline BesicovitchReport classify_besicovitch(const DillMap& F) {
    BesicovitchReport r;
    const std::uint64_t s = F.diameter();
    if (F.is_uniform()) {
        r.status = BesicovitchStatus::WellDefinedUniform;
        std::uint64_t maxd = 0;
        std::uint64_t mind = UINT64_MAX;
        const std::uint64_t wc = F.rule().window_count();
        for (std::uint64_t i = 0; i < wc; ++i)
            for (std::uint64_t j = i; j < wc; ++j) {
                const std::uint64_t d =
                    hamming(F.rule().image_at(i).view(), F.rule().image_at(j).view());
                maxd = std::max(maxd, d);
                if (i != j) mind = std::min(mind, d);
            }
        if (mind == UINT64_MAX) mind = 0;  // single-window table
        r.maxd = maxd;
        r.mind = mind;
        r.lipschitz = Rational(static_cast<std::int64_t>(s * maxd),
                               static_cast<std::int64_t>(F.lower_norm()));
        const std::uint64_t lower = F.lower_norm();
        if (s * maxd < lower)
            r.regime = BesicovitchRegime::Contracting;
        else if (s * mind == lower && s * maxd == lower)
            r.regime = BesicovitchRegime::Isometry;
        else if (s * maxd == lower)
            r.regime = BesicovitchRegime::Equicontinuous;
        else
            r.regime = BesicovitchRegime::Unclassified;
        return r;
    }
    if (is_constant(F)) {
        r.status = BesicovitchStatus::WellDefinedConstant;
        r.lipschitz = Rational(0);
        r.regime = BesicovitchRegime::Contracting;
        return r;
    }
    r.status = BesicovitchStatus::NotWellDefined;
    r.regime = BesicovitchRegime::Unclassified;
    r.witness = detail::besicovitch_witness(F);
    return r;
}

struct FeldmanReport {
    Rational lipschitz;  // (2s-1) * upper/lower, always defined
    std::optional<bool> equicontinuous;                        // substitutions only
    std::optional<std::vector<Letter>> equicontinuous_points;  // = maxal, substitutions only
};

inline FeldmanReport classify_feldman(const DillMap& F) {
    FeldmanReport r;
    const std::int64_t s = F.diameter();
    r.lipschitz = Rational((2 * s - 1) * static_cast<std::int64_t>(F.upper_norm()),
                           static_cast<std::int64_t>(F.lower_norm()));
    if (F.is_substitution()) {
        const auto decomp = components(F);
        bool all_terminal_maximum = true;
        for (const auto& c : decomp.components)
            if (c.terminal && !c.maximum) all_terminal_maximum = false;
        r.equicontinuous = all_terminal_maximum;
        r.equicontinuous_points = decomp.maxal;
    }
    return r;
}

struct ClassificationReport {
    std::string rule_name;
    std::string alphabet_glyphs;
    std::uint32_t diameter = 1;
    std::uint64_t lower_norm = 1, upper_norm = 1;
    Predicates predicates;
    BesicovitchReport besicovitch;
    FeldmanReport feldman;
    std::optional<ComponentDecomposition> component_decomposition;  // substitutions only
};

inline ClassificationReport classify(const DillMap& F, std::string name = "") {
    ClassificationReport r;
    r.rule_name = std::move(name);
    r.alphabet_glyphs = F.alphabet().glyphs();
    r.diameter = F.diameter();
    r.lower_norm = F.lower_norm();
    r.upper_norm = F.upper_norm();
    r.predicates = predicates(F);
    r.besicovitch = classify_besicovitch(F);
    r.feldman = classify_feldman(F);
    if (F.is_substitution()) r.component_decomposition = components(F);
    return r;
}

// Empirical check of (sigma^m o F)^n == sigma^{sum m*lower^k} o F^n on
// prefixes, for uniform F.
inline bool shift_compose_invariance(const DillMap& F, std::uint64_t m, const InfiniteWordSpec& x,
                                     unsigned n_max = 5, std::uint64_t l = 256) {
    if (!F.is_uniform()) throw std::invalid_argument("shift_compose_invariance needs uniform F");
    const std::uint64_t q = F.lower_norm();
    InfiniteWordSpec z = x;
    std::uint64_t offset = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
        Word lhs = z.prefix(l);
        Word rhs = iterate(F, x, n, offset + l).slice(offset, offset + l);
        if (!(lhs == rhs)) return false;
        z = shift(apply_as_spec(F, z), m);
        offset = offset * q + m;
    }
    return true;
}

}  // namespace dillscope
