#ifndef PERIA_GROWTH_HPP
#define PERIA_GROWTH_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "peria/cayley.hpp"
#include "peria/classify.hpp"

namespace peria {

/// Truncated series with nonnegative integer coefficients c(0..N).
struct GrowthSeries {
    std::vector<long long> c;

    int truncation() const { return static_cast<int>(c.size()) - 1; }
    long long at(int n) const {
        return (0 <= n && n < static_cast<int>(c.size())) ? c[static_cast<size_t>(n)] : 0;
    }
};

inline GrowthSeries series_product(const GrowthSeries& a, const GrowthSeries& b) {
    int n = std::min(a.truncation(), b.truncation());
    GrowthSeries out;
    out.c.assign(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            out.c[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    return out;
}

/// Sphere sizes s(0..N) of the Cayley ball in the chosen mode.
inline GrowthSeries spherical_growth(const PeriagroupPresentation& p, int radius,
                                     BallMode mode = BallMode::SGen, BallOptions opt = {}) {
    opt.want_hyperplanes = false;
    opt.want_graph = false;
    ExploredBall b = explore_ball(p, {}, radius, mode, opt);
    GrowthSeries s;
    s.c.assign(static_cast<size_t>(radius) + 1, 0);
    for (int d : b.dist) ++s.c[static_cast<size_t>(d)];
    return s;
}

struct ConjugacyClassTable {
    int limit = 0;                                   // lengths counted up to here
    std::string method;                              // "saturation(k)" or "exact-gp"
    bool stable = true;                              // saturation stability re-run
    std::vector<std::vector<CanonicalForm>> reps;    // reps[n] = one rep per class of length n
};

struct ConjugacyGrowth {
    GrowthSeries series;
    ConjugacyClassTable table;
};

namespace detail {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[static_cast<size_t>(x)] != x) {
            up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
            x = up[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { up[static_cast<size_t>(find(a))] = find(b); }
};

/// One saturation pass: conjugacy classes seen inside the radius-(N+slack)
/// ball, counted by minimal length <= N.
inline ConjugacyGrowth saturation_pass(const PeriagroupPresentation& p, int limit, int slack,
                                       BallOptions opt) {
    opt.want_hyperplanes = false;
    opt.want_graph = false;
    ExploredBall b = explore_ball(p, {}, limit + slack, BallMode::SGen, opt);
    auto mult = detail::ball_multipliers(p, BallMode::SGen, 0);
    UnionFind uf(b.verts.size());
    for (size_t i = 0; i < b.verts.size(); ++i) {
        for (int v = 0; v < p.n(); ++v)
            for (Elem e : mult[static_cast<size_t>(v)]) {
                Word s{{v, e}}, si{{v, p.spec(v).inv(e)}};
                CanonicalForm y = multiply(p, multiply(p, si, b.verts[i].word).word, s);
                auto it = b.index.find(y.word);
                if (it != b.index.end()) uf.unite(static_cast<int>(i), it->second);
            }
    }
    std::map<int, std::pair<int, int>> best;   // root -> (min length, witness)
    for (size_t i = 0; i < b.verts.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto it = best.find(r);
        if (it == best.end() || b.dist[i] < it->second.first)
            best[r] = {b.dist[i], static_cast<int>(i)};
    }
    ConjugacyGrowth out;
    out.series.c.assign(static_cast<size_t>(limit) + 1, 0);
    out.table.limit = limit;
    out.table.method = "saturation(" + std::to_string(slack) + ")";
    out.table.reps.assign(static_cast<size_t>(limit) + 1, {});
    for (auto& [root, wl] : best) {
        if (wl.first > limit) continue;
        ++out.series.c[static_cast<size_t>(wl.first)];
        out.table.reps[static_cast<size_t>(wl.first)].push_back(b.verts[static_cast<size_t>(wl.second)]);
    }
    for (auto& row : out.table.reps) std::sort(row.begin(), row.end());
    return out;
}

}   // namespace detail

/// Union-find conjugacy counting with a stability gate: the same count at
/// slack+1 must reproduce c(0..N), otherwise the table is flagged unstable.
inline ConjugacyGrowth conjugacy_growth_saturation(const PeriagroupPresentation& p, int limit,
                                                   int slack = 1, BallOptions opt = {}) {
    ConjugacyGrowth base = detail::saturation_pass(p, limit, slack, opt);
    ConjugacyGrowth recheck = detail::saturation_pass(p, limit, slack + 1, opt);
    base.table.stable = (base.series.c == recheck.series.c);
    return base;
}

/// Exact conjugacy counting for graph products of cyclic groups: classes of
/// cyclically reduced words under cyclic syllable permutation and the
/// commutation shuffles already folded into canonical forms.
inline ConjugacyGrowth conjugacy_growth_exact_gp(const PeriagroupPresentation& p, int limit,
                                                 BallOptions opt = {}) {
    if (!p.all_edges_label2())
        throw domain_error("exact conjugacy counting needs a graph product (all labels 2)");
    for (const auto& s : p.specs)
        if (s.kind != GroupKind::Cyclic && s.kind != GroupKind::CyclicInfinite)
            throw domain_error("exact conjugacy counting needs cyclic vertex groups");
    opt.want_hyperplanes = false;
    opt.want_graph = false;
    ExploredBall b = explore_ball(p, {}, limit, BallMode::SGen, opt);
    std::map<CanonicalForm, std::pair<int, CanonicalForm>> classes;   // key -> (length, rep)
    for (const CanonicalForm& x : b.verts) {
        auto [core, support] = cyclic_reduce_and_support(p, x.word);
        (void)support;
        // Rotation closure of the cyclically reduced core; commutation
        // moves are absorbed by re-canonicalising after each rotation.
        std::set<CanonicalForm> seen{core};
        std::vector<CanonicalForm> frontier{core};
        while (!frontier.empty()) {
            std::vector<CanonicalForm> next;
            for (const CanonicalForm& w : frontier) {
                if (w.word.size() < 2) continue;
                Word rot(w.word.begin() + 1, w.word.end());
                rot.push_back(w.word.front());
                CanonicalForm r = canonical_form(p, rot);
                if (seen.insert(r).second) next.push_back(std::move(r));
                // Also rotate backwards so the closure is symmetric even if
                // a re-canonicalisation jumps between rotation orbits.
                Word back{w.word.back()};
                back.insert(back.end(), w.word.begin(), w.word.end() - 1);
                CanonicalForm l = canonical_form(p, back);
                if (seen.insert(l).second) next.push_back(std::move(l));
            }
            frontier = std::move(next);
        }
        CanonicalForm key = *seen.begin();
        int len = word_length_S(p, core.word);
        auto it = classes.find(key);
        if (it == classes.end() || len < it->second.first) classes[key] = {len, key};
    }
    ConjugacyGrowth out;
    out.series.c.assign(static_cast<size_t>(limit) + 1, 0);
    out.table.limit = limit;
    out.table.method = "exact-gp";
    out.table.reps.assign(static_cast<size_t>(limit) + 1, {});
    for (auto& [key, lr] : classes) {
        if (lr.first > limit) continue;
        ++out.series.c[static_cast<size_t>(lr.first)];
        out.table.reps[static_cast<size_t>(lr.first)].push_back(lr.second);
    }
    for (auto& row : out.table.reps) std::sort(row.begin(), row.end());
    return out;
}

inline ConjugacyGrowth conjugacy_growth(const PeriagroupPresentation& p, int limit,
                                        const std::string& method = "saturation", int slack = 1,
                                        BallOptions opt = {}) {
    if (method == "exact-gp") return conjugacy_growth_exact_gp(p, limit, opt);
    if (method == "saturation") return conjugacy_growth_saturation(p, limit, slack, opt);
    throw domain_error("unknown conjugacy counting method: " + method);
}

// ------------------------------------------------------------- asymptotics

/// Root estimate of the growth rate from sphere sizes: min/max of
/// s(n)^(1/n) over the last few spheres.
struct RateEstimate {
    double lo = 0, hi = 0, point = 0;
    int window = 0;
};

inline RateEstimate growth_rate_estimate(const GrowthSeries& s, int window = 3) {
    RateEstimate r;
    int n = s.truncation();
    r.window = window;
    for (int k = std::max(1, n - window + 1); k <= n; ++k) {
        if (s.at(k) <= 0) continue;
        double root = std::pow(static_cast<double>(s.at(k)), 1.0 / k);
        if (r.lo == 0 || root < r.lo) r.lo = root;
        if (root > r.hi) r.hi = root;
    }
    r.point = std::pow(static_cast<double>(std::max<long long>(1, s.at(n))), 1.0 / std::max(1, n));
    return r;
}

/// Ratios c(n) * n / alpha^n over a window; bounded ratios are the
/// signature of alpha^n / n asymptotics.
struct AsymptoticDiagnostic {
    bool applicable = false;   // needs alpha bounded away from 1
    double alpha = 0;
    int from = 0;
    std::vector<double> ratio;
    double lo = 0, hi = 0;
};

inline AsymptoticDiagnostic asymptotic_diagnostic(const GrowthSeries& c, double alpha_hat,
                                                  int from = 3) {
    AsymptoticDiagnostic d;
    d.alpha = alpha_hat;
    d.from = from;
    d.applicable = alpha_hat > 1.05;
    for (int n = from; n <= c.truncation(); ++n) {
        double r = static_cast<double>(c.at(n)) * n / std::pow(alpha_hat, n);
        d.ratio.push_back(r);
        if (d.ratio.size() == 1 || r < d.lo) d.lo = r;
        if (d.ratio.size() == 1 || r > d.hi) d.hi = r;
    }
    return d;
}

// ------------------------------------------------------------ transcendence

namespace detail {

/// Virtually abelian factor: finite, a single infinite cyclic vertex, or an
/// affine reflection factor (including the infinite dihedral group).
inline bool factor_virtually_abelian(const PeriagroupPresentation& p,
                                     const std::vector<int>& factor) {
    FactorFiniteness f = factor_finiteness(p, factor);
    if (f.finite) return true;
    if (factor.size() == 1) return p.spec(factor[0]).kind == GroupKind::CyclicInfinite;
    for (int u : factor)
        if (p.spec(u).order() != 2) return false;
    auto t = classify_irreducible(coxeter_diagram_of(p.induced(factor)));
    return t.tag == CoxeterTag::Affine;
}

}   // namespace detail

/// Verdict on the conjugacy growth series: Yes = transcendental,
/// No = rational, Unknown = open.
inline ClassificationReport transcendence_verdict(const PeriagroupPresentation& p,
                                                  int rate_radius = 6) {
    ClassificationReport r;
    auto factors = star2_decomposition(p);
    bool all_vab = true;
    std::vector<std::vector<int>> infinite;
    for (const auto& f : factors) {
        bool fin = factor_finiteness(p, f).finite;
        bool vab = detail::factor_virtually_abelian(p, f);
        if (!vab) all_vab = false;
        if (!fin) infinite.push_back(f);
        r.factors.push_back(detail::join_names(p, f) + ": " +
                            (fin ? "finite" : (vab ? "virtually abelian" : "infinite")));
    }
    if (all_vab) {
        r.verdict = TriBool::No;
        r.rule = "rational: virtually abelian group";
        return r;
    }
    ClassificationReport con = contracting_exists(p);
    if (con.yes()) {
        // The virtually abelian screen above already removed every
        // elementary case (finite, Z-factor, infinite dihedral).
        r.verdict = TriBool::Yes;
        r.rule = "transcendental: contracting element in a non-elementary group";
        r.witnesses.push_back(con.rule);
        return r;
    }
    if (infinite.size() >= 2) {
        // Dominant-factor product rule: one factor must beat all others by
        // a separated growth-rate interval and itself be contracting.
        std::vector<RateEstimate> rates;
        std::vector<ClassificationReport> sub;
        for (const auto& f : infinite) {
            PeriagroupPresentation q = p.induced(f);
            rates.push_back(growth_rate_estimate(spherical_growth(q, rate_radius)));
            sub.push_back(contracting_exists(q));
        }
        int dominant = -1;
        for (size_t i = 0; i < rates.size(); ++i) {
            bool beats = true;
            for (size_t j = 0; j < rates.size(); ++j)
                if (j != i && rates[j].hi >= rates[i].lo) { beats = false; break; }
            if (beats) { dominant = static_cast<int>(i); break; }
        }
        if (dominant >= 0 && sub[static_cast<size_t>(dominant)].yes() &&
            rates[static_cast<size_t>(dominant)].lo > 1.05) {
            r.verdict = TriBool::Yes;
            r.rule = "transcendental: dominant contracting factor in a direct product";
            r.witnesses.push_back("dominant factor " +
                                  detail::join_names(p, infinite[static_cast<size_t>(dominant)]));
            return r;
        }
        r.verdict = TriBool::Unknown;
        r.rule = dominant < 0 ? "open: factor growth-rate intervals overlap"
                              : "open: dominant factor not certified contracting";
        return r;
    }
    r.verdict = TriBool::Unknown;
    r.rule = "open: no applicable rule";
    return r;
}

}   // namespace peria

#endif
