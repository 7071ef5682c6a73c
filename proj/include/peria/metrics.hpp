#ifndef PERIA_METRICS_HPP
#define PERIA_METRICS_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "peria/graphcore.hpp"

namespace peria {

/// One metric per maximal clique: d[c][i][j] between the i-th and j-th vertex
/// of the sorted clique c.
struct CliqueMetrics {
    std::vector<std::vector<std::vector<long long>>> d;

    long long between(const HyperplaneStructure& hs, int c, int u, int v) const {
        const auto& C = hs.cg.cliques[static_cast<size_t>(c)];
        auto iu = std::lower_bound(C.begin(), C.end(), u) - C.begin();
        auto iv = std::lower_bound(C.begin(), C.end(), v) - C.begin();
        return d[static_cast<size_t>(c)][static_cast<size_t>(iu)][static_cast<size_t>(iv)];
    }
};

inline CliqueMetrics make_discrete_metrics(const HyperplaneStructure& hs) {
    CliqueMetrics cm;
    for (const auto& C : hs.cg.cliques) {
        size_t k = C.size();
        cm.d.emplace_back(k, std::vector<long long>(k, 1));
        for (size_t i = 0; i < k; ++i) cm.d.back()[i][i] = 0;
    }
    return cm;
}

/// Build a coherent system from one matrix per hyperplane, given on its
/// representative clique and transported to the other member cliques through
/// the gate projections.
inline CliqueMetrics metrics_from_hyperplane_tables(
    const HyperplaneStructure& hs, const std::vector<std::vector<std::vector<long long>>>& rep_tables) {
    if (rep_tables.size() != static_cast<size_t>(hs.num_hyp))
        throw domain_error("need one metric table per hyperplane");
    CliqueMetrics cm;
    cm.d.resize(hs.cg.cliques.size());
    for (int h = 0; h < hs.num_hyp; ++h) {
        int r = hs.rep_clique(h);
        const auto& R = hs.cg.cliques[static_cast<size_t>(r)];
        const auto& tbl = rep_tables[static_cast<size_t>(h)];
        if (tbl.size() != R.size()) throw domain_error("metric table size mismatch for hyperplane");
        for (int c : hs.hyp_cliques[static_cast<size_t>(h)]) {
            const auto& C = hs.cg.cliques[static_cast<size_t>(c)];
            size_t k = C.size();
            auto& m = cm.d[static_cast<size_t>(c)];
            m.assign(k, std::vector<long long>(k, 0));
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) {
                    int gi = hs.cg.gate[static_cast<size_t>(r)][static_cast<size_t>(C[i])];
                    int gj = hs.cg.gate[static_cast<size_t>(r)][static_cast<size_t>(C[j])];
                    size_t pi = static_cast<size_t>(std::lower_bound(R.begin(), R.end(), gi) - R.begin());
                    size_t pj = static_cast<size_t>(std::lower_bound(R.begin(), R.end(), gj) - R.begin());
                    m[i][j] = tbl[pi][pj];
                }
        }
    }
    return cm;
}

/// Coherence: projections between parallel cliques are isometries.  Returns
/// the first violating clique pair, or nothing.
inline std::optional<std::pair<int, int>> check_coherent(const HyperplaneStructure& hs,
                                                         const CliqueMetrics& cm) {
    for (size_t c = 0; c < hs.cg.cliques.size(); ++c) {
        const auto& C = hs.cg.cliques[c];
        if (cm.d[c].size() != C.size()) throw domain_error("metric table size mismatch");
        for (size_t i = 0; i < C.size(); ++i)
            for (size_t j = 0; j < C.size(); ++j) {
                long long v = cm.d[c][i][j];
                if (cm.d[c][j][i] != v || (i == j) != (v == 0) || v < 0)
                    throw domain_error("clique metric table is not a metric");
            }
    }
    for (int h = 0; h < hs.num_hyp; ++h) {
        const auto& members = hs.hyp_cliques[static_cast<size_t>(h)];
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = a + 1; b < members.size(); ++b) {
                int ca = members[a], cb = members[b];
                const auto& A = hs.cg.cliques[static_cast<size_t>(ca)];
                for (size_t i = 0; i < A.size(); ++i)
                    for (size_t j = i + 1; j < A.size(); ++j) {
                        int pi = hs.cg.gate[static_cast<size_t>(cb)][static_cast<size_t>(A[i])];
                        int pj = hs.cg.gate[static_cast<size_t>(cb)][static_cast<size_t>(A[j])];
                        if (cm.between(hs, ca, A[i], A[j]) != cm.between(hs, cb, pi, pj))
                            return std::make_pair(ca, cb);
                    }
            }
    }
    return std::nullopt;
}

/// Hyperplane-level distance: the clique metric between the projections onto
/// any member clique (well defined by coherence).
inline long long hyperplane_delta(const HyperplaneStructure& hs, const CliqueMetrics& cm, int h,
                                  int x, int y) {
    int c = hs.rep_clique(h);
    int px = hs.cg.gate[static_cast<size_t>(c)][static_cast<size_t>(x)];
    int py = hs.cg.gate[static_cast<size_t>(c)][static_cast<size_t>(y)];
    return cm.between(hs, c, px, py);
}

/// Weighted thickness: diameter of a member clique (1 for the discrete metric).
inline long long hyperplane_thickness(const HyperplaneStructure& hs, const CliqueMetrics* cm, int h) {
    const auto& C = hs.cg.cliques[static_cast<size_t>(hs.rep_clique(h))];
    if (!cm) return C.size() >= 2 ? 1 : 0;
    long long t = 0;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j)
            t = std::max(t, cm->between(hs, hs.rep_clique(h), C[i], C[j]));
    return t;
}

/// Sum of clique distances along a geodesic from x to y.  Verified to be
/// independent of the geodesic and equal to the sum over separating
/// hyperplanes.  Throws with the violating clique pair if the metrics are
/// incoherent.
inline long long delta_distance(const HyperplaneStructure& hs, const CliqueMetrics& cm, int x, int y) {
    if (auto bad = check_coherent(hs, cm))
        throw domain_error("incoherent clique metrics: projection between cliques " +
                           std::to_string(bad->first) + " and " + std::to_string(bad->second) +
                           " is not an isometry");
    if (x == y) return 0;
    long long hyp_sum = 0;
    for (int h : hs.separating_hyperplanes(x, y)) hyp_sum += hyperplane_delta(hs, cm, h, x, y);

    // Min and max over all geodesics via the interval DAG.
    const auto& dist = hs.cg.dist;
    int d = dist[static_cast<size_t>(x)][static_cast<size_t>(y)];
    const long long none = std::numeric_limits<long long>::min();
    std::vector<long long> lo(static_cast<size_t>(hs.graph.n), none), hi = lo;
    lo[static_cast<size_t>(x)] = hi[static_cast<size_t>(x)] = 0;
    std::vector<std::vector<int>> by_level(static_cast<size_t>(d + 1));
    for (int v = 0; v < hs.graph.n; ++v)
        if (dist[static_cast<size_t>(x)][static_cast<size_t>(v)] +
                dist[static_cast<size_t>(v)][static_cast<size_t>(y)] == d)
            by_level[static_cast<size_t>(dist[static_cast<size_t>(x)][static_cast<size_t>(v)])].push_back(v);
    for (int lvl = 0; lvl < d; ++lvl)
        for (int u : by_level[static_cast<size_t>(lvl)]) {
            if (lo[static_cast<size_t>(u)] == none) continue;
            for (int v : hs.graph.nbrs[static_cast<size_t>(u)]) {
                if (dist[static_cast<size_t>(x)][static_cast<size_t>(v)] != lvl + 1 ||
                    dist[static_cast<size_t>(v)][static_cast<size_t>(y)] != d - lvl - 1)
                    continue;
                int c = hs.edge_clique.at({std::min(u, v), std::max(u, v)});
                long long w = cm.between(hs, c, u, v);
                if (lo[static_cast<size_t>(v)] == none) {
                    lo[static_cast<size_t>(v)] = lo[static_cast<size_t>(u)] + w;
                    hi[static_cast<size_t>(v)] = hi[static_cast<size_t>(u)] + w;
                } else {
                    lo[static_cast<size_t>(v)] = std::min(lo[static_cast<size_t>(v)], lo[static_cast<size_t>(u)] + w);
                    hi[static_cast<size_t>(v)] = std::max(hi[static_cast<size_t>(v)], hi[static_cast<size_t>(u)] + w);
                }
            }
        }
    if (lo[static_cast<size_t>(y)] != hyp_sum || hi[static_cast<size_t>(y)] != hyp_sum)
        throw std::logic_error("geodesic sums disagree with the hyperplane sum");
    return hyp_sum;
}

struct WellSeparation {
    bool separated = false;   // false when J and K are transverse
    long long L = 0;          // max total thickness of an admissible family
};

namespace detail {

/// Sectors of hyperplane a met by the edges of hyperplane b.
inline std::set<int> sectors_met(const HyperplaneStructure& hs, int a, int b) {
    std::set<int> out;
    for (const auto& [u, v] : hs.hyp_edges[static_cast<size_t>(b)]) {
        out.insert(hs.sector_of[static_cast<size_t>(a)][static_cast<size_t>(u)]);
        out.insert(hs.sector_of[static_cast<size_t>(a)][static_cast<size_t>(v)]);
    }
    return out;
}

/// a separates b and c: they lie in disjoint collections of sectors of a.
inline bool hyp_separates(const HyperplaneStructure& hs, int a, int b, int c) {
    auto sb = sectors_met(hs, a, b);
    auto sc = sectors_met(hs, a, c);
    for (int s : sb)
        if (sc.count(s)) return false;
    return true;
}

} // namespace detail

/// Max total thickness over families transverse to both J and K with no
/// facing triple (three pairwise non-transverse hyperplanes none of which
/// separates the other two).
inline WellSeparation well_separated_check(const HyperplaneStructure& hs, int J, int K,
                                           const CliqueMetrics* cm = nullptr) {
    if (J == K || J < 0 || K < 0 || J >= hs.num_hyp || K >= hs.num_hyp)
        throw domain_error("need two distinct hyperplanes");
    WellSeparation ws;
    if (hs.transverse[static_cast<size_t>(J)][static_cast<size_t>(K)]) return ws;   // not separated
    ws.separated = true;
    std::vector<int> T;
    for (int h = 0; h < hs.num_hyp; ++h)
        if (hs.transverse[static_cast<size_t>(h)][static_cast<size_t>(J)] &&
            hs.transverse[static_cast<size_t>(h)][static_cast<size_t>(K)])
            T.push_back(h);
    if (T.size() > 25) throw resource_error("too many hyperplanes transverse to both");
    std::vector<long long> thick;
    for (int h : T) thick.push_back(hyperplane_thickness(hs, cm, h));
    std::vector<std::vector<char>> trans(T.size(), std::vector<char>(T.size(), 0));
    for (size_t i = 0; i < T.size(); ++i)
        for (size_t j = 0; j < T.size(); ++j)
            trans[i][j] = hs.transverse[static_cast<size_t>(T[i])][static_cast<size_t>(T[j])];
    auto facing = [&](size_t a, size_t b, size_t c) {
        if (trans[a][b] || trans[a][c] || trans[b][c]) return false;
        return !detail::hyp_separates(hs, T[a], T[b], T[c]) &&
               !detail::hyp_separates(hs, T[b], T[a], T[c]) &&
               !detail::hyp_separates(hs, T[c], T[a], T[b]);
    };
    std::vector<size_t> chosen;
    long long best = 0;
    std::function<void(size_t, long long, long long)> dfs = [&](size_t idx, long long cur,
                                                                long long remaining) {
        best = std::max(best, cur);
        if (idx == T.size() || cur + remaining <= best) return;
        // take idx if it completes no facing triple
        bool ok = true;
        for (size_t i = 0; i < chosen.size() && ok; ++i)
            for (size_t j = i + 1; j < chosen.size() && ok; ++j)
                if (facing(chosen[i], chosen[j], idx)) ok = false;
        if (ok) {
            chosen.push_back(idx);
            dfs(idx + 1, cur + thick[idx], remaining - thick[idx]);
            chosen.pop_back();
        }
        dfs(idx + 1, cur, remaining - thick[idx]);
    };
    long long total = 0;
    for (long long t : thick) total += t;
    dfs(0, 0, total);
    ws.L = best;
    return ws;
}

} // namespace peria

#endif
