#ifndef PERIA_GRAPHCORE_HPP
#define PERIA_GRAPHCORE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peria/graph.hpp"

namespace peria {

// ---------------------------------------------------------------- cliques

struct CliquesAndGates {
    std::vector<std::vector<int>> cliques;   // maximal cliques, each sorted; list sorted
    std::vector<std::vector<int>> dist;      // all-pairs BFS
    std::vector<std::vector<int>> gate;      // gate[c][v] = gate of v in clique c, or -1
    bool clique_gated = true;
    int fail_vertex = -1, fail_clique = -1;  // first missing gate
};

namespace detail {

inline void bron_kerbosch(const FiniteGraph& g, std::vector<int>& R, std::vector<int> P,
                          std::vector<int> X, std::vector<std::vector<int>>& out) {
    if (P.empty() && X.empty()) {
        out.push_back(R);
        return;
    }
    // Pivot on the vertex of P∪X with most neighbours in P.
    int pivot = -1;
    size_t best = 0;
    auto count_nbrs = [&](int u) {
        size_t c = 0;
        for (int v : P)
            if (g.adjacent(u, v)) ++c;
        return c;
    };
    for (int u : P)
        if (pivot < 0 || count_nbrs(u) > best) { pivot = u; best = count_nbrs(u); }
    for (int u : X)
        if (pivot < 0 || count_nbrs(u) > best) { pivot = u; best = count_nbrs(u); }
    std::vector<int> cand;
    for (int v : P)
        if (pivot < 0 || !g.adjacent(pivot, v)) cand.push_back(v);
    for (int v : cand) {
        std::vector<int> P2, X2;
        for (int w : P)
            if (g.adjacent(v, w)) P2.push_back(w);
        for (int w : X)
            if (g.adjacent(v, w)) X2.push_back(w);
        R.push_back(v);
        bron_kerbosch(g, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

} // namespace detail

inline std::vector<std::vector<int>> maximal_cliques(const FiniteGraph& g) {
    std::vector<int> R, P(static_cast<size_t>(g.n)), X;
    std::iota(P.begin(), P.end(), 0);
    std::vector<std::vector<int>> out;
    detail::bron_kerbosch(g, R, std::move(P), std::move(X), out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline CliquesAndGates compute_cliques_and_gates(const FiniteGraph& g) {
    if (!g.connected()) throw domain_error("graph is not connected");
    CliquesAndGates cg;
    cg.cliques = maximal_cliques(g);
    cg.dist = g.all_pairs_dist();
    cg.gate.assign(cg.cliques.size(), std::vector<int>(static_cast<size_t>(g.n), -1));
    for (size_t c = 0; c < cg.cliques.size(); ++c) {
        const auto& C = cg.cliques[c];
        for (int v = 0; v < g.n; ++v) {
            for (int x0 : C) {
                bool ok = true;
                for (int y : C)
                    if (cg.dist[static_cast<size_t>(v)][static_cast<size_t>(y)] !=
                        cg.dist[static_cast<size_t>(v)][static_cast<size_t>(x0)] +
                            cg.dist[static_cast<size_t>(x0)][static_cast<size_t>(y)]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    cg.gate[c][static_cast<size_t>(v)] = x0;
                    break;
                }
            }
            if (cg.gate[c][static_cast<size_t>(v)] < 0 && cg.clique_gated) {
                cg.clique_gated = false;
                cg.fail_vertex = v;
                cg.fail_clique = static_cast<int>(c);
            }
        }
    }
    return cg;
}

// ------------------------------------------------------------- hyperplanes

struct HyperplaneStructure {
    FiniteGraph graph;
    CliquesAndGates cg;
    std::vector<int> clique_class;                          // clique -> hyperplane id
    int num_hyp = 0;
    std::vector<std::vector<int>> hyp_cliques;              // hyperplane -> member cliques
    std::vector<std::vector<std::pair<int, int>>> hyp_edges;
    std::vector<std::vector<int>> sector_of;                // [h][v] -> sector index
    std::vector<int> sector_count;
    std::vector<std::vector<char>> transverse;
    std::map<std::pair<int, int>, int> edge_clique;         // (u<v) -> unique clique

    int rep_clique(int h) const { return hyp_cliques[static_cast<size_t>(h)][0]; }

    const std::vector<int>& sectors(int h) const { return sector_of[static_cast<size_t>(h)]; }

    std::vector<std::vector<int>> sector_vertex_sets(int h) const {
        std::vector<std::vector<int>> out(static_cast<size_t>(sector_count[static_cast<size_t>(h)]));
        for (int v = 0; v < graph.n; ++v)
            out[static_cast<size_t>(sector_of[static_cast<size_t>(h)][static_cast<size_t>(v)])].push_back(v);
        return out;
    }

    bool separates(int h, int x, int y) const {
        return sector_of[static_cast<size_t>(h)][static_cast<size_t>(x)] !=
               sector_of[static_cast<size_t>(h)][static_cast<size_t>(y)];
    }

    std::vector<int> separating_hyperplanes(int x, int y) const {
        std::vector<int> out;
        for (int h = 0; h < num_hyp; ++h)
            if (separates(h, x, y)) out.push_back(h);
        return out;
    }

    int hyperplane_of_edge(int u, int v) const {
        auto it = edge_clique.find({std::min(u, v), std::max(u, v)});
        if (it == edge_clique.end()) throw domain_error("not an edge");
        return clique_class[static_cast<size_t>(it->second)];
    }
};

namespace detail {

/// Projection of clique a onto clique b (through gates); empty if not bijective.
inline std::vector<int> clique_projection(const CliquesAndGates& cg, size_t a, size_t b) {
    std::vector<int> img;
    for (int x : cg.cliques[a]) img.push_back(cg.gate[b][static_cast<size_t>(x)]);
    return img;
}

inline bool cliques_parallel(const CliquesAndGates& cg, size_t a, size_t b) {
    if (a == b) return true;
    if (cg.cliques[a].size() != cg.cliques[b].size()) return false;
    auto img = clique_projection(cg, a, b);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img.size() == cg.cliques[b].size();
}

} // namespace detail

/// Hyperplanes, sectors and transversality of a paraclique graph.  Throws on
/// non-clique-gated input or intransitive parallelism (with witnesses).
inline HyperplaneStructure compute_hyperplanes(const FiniteGraph& g) {
    HyperplaneStructure hs;
    hs.graph = g;
    hs.cg = compute_cliques_and_gates(g);
    if (!hs.cg.clique_gated)
        throw domain_error("graph is not clique-gated (vertex " + std::to_string(hs.cg.fail_vertex) +
                           " has no gate in clique " + std::to_string(hs.cg.fail_clique) + ")");
    const auto& cliques = hs.cg.cliques;
    const size_t nc = cliques.size();

    // Each edge must lie in exactly one maximal clique.
    for (size_t c = 0; c < nc; ++c)
        for (size_t i = 0; i < cliques[c].size(); ++i)
            for (size_t j = i + 1; j < cliques[c].size(); ++j) {
                auto key = std::make_pair(cliques[c][i], cliques[c][j]);
                auto [it, fresh] = hs.edge_clique.emplace(key, static_cast<int>(c));
                if (!fresh)
                    throw domain_error("edge {" + std::to_string(key.first) + "," +
                                       std::to_string(key.second) + "} lies in two maximal cliques");
            }

    // Parallelism classes by union-find, then verified pairwise.
    std::vector<std::vector<char>> par(nc, std::vector<char>(nc, 0));
    std::vector<int> uf(nc);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&uf](int x) {
        while (uf[static_cast<size_t>(x)] != x) {
            uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
            x = uf[static_cast<size_t>(x)];
        }
        return x;
    };
    for (size_t a = 0; a < nc; ++a)
        for (size_t b = 0; b < nc; ++b) {
            par[a][b] = detail::cliques_parallel(hs.cg, a, b) ? 1 : 0;
            if (par[a][b]) uf[static_cast<size_t>(find(static_cast<int>(a)))] = find(static_cast<int>(b));
        }
    for (size_t a = 0; a < nc; ++a)
        for (size_t b = 0; b < nc; ++b)
            if (par[a][b] != par[b][a])
                throw domain_error("parallelism asymmetry between cliques " + std::to_string(a) +
                                   " and " + std::to_string(b));
    // Transitivity: all pairs within a union-find class must be parallel.
    for (size_t a = 0; a < nc; ++a)
        for (size_t b = 0; b < nc; ++b)
            if (find(static_cast<int>(a)) == find(static_cast<int>(b)) && !par[a][b]) {
                // Recover a witnessing middle clique for the error message.
                for (size_t m = 0; m < nc; ++m)
                    if (par[a][m] && par[m][b])
                        throw domain_error("parallelism is not transitive: cliques " +
                                           std::to_string(a) + " ~ " + std::to_string(m) + " ~ " +
                                           std::to_string(b) + " but " + std::to_string(a) +
                                           " !~ " + std::to_string(b));
                throw domain_error("parallelism is not transitive (cliques " + std::to_string(a) +
                                   ", " + std::to_string(b) + ")");
            }

    // Hyperplane ids in deterministic order (least member clique).
    std::map<int, int> root_to_id;
    hs.clique_class.assign(nc, -1);
    for (size_t c = 0; c < nc; ++c) {
        int r = find(static_cast<int>(c));
        auto [it, fresh] = root_to_id.emplace(r, hs.num_hyp);
        if (fresh) {
            hs.hyp_cliques.emplace_back();
            ++hs.num_hyp;
        }
        hs.clique_class[c] = it->second;
        hs.hyp_cliques[static_cast<size_t>(it->second)].push_back(static_cast<int>(c));
    }
    hs.hyp_edges.assign(static_cast<size_t>(hs.num_hyp), {});
    for (auto& [e, c] : hs.edge_clique)
        hs.hyp_edges[static_cast<size_t>(hs.clique_class[static_cast<size_t>(c)])].push_back(e);

    // Sectors: components after deleting the hyperplane's edges.
    hs.sector_of.assign(static_cast<size_t>(hs.num_hyp), std::vector<int>(static_cast<size_t>(g.n), -1));
    hs.sector_count.assign(static_cast<size_t>(hs.num_hyp), 0);
    for (int h = 0; h < hs.num_hyp; ++h) {
        std::set<std::pair<int, int>> removed(hs.hyp_edges[static_cast<size_t>(h)].begin(),
                                              hs.hyp_edges[static_cast<size_t>(h)].end());
        auto& sec = hs.sector_of[static_cast<size_t>(h)];
        for (int v = 0; v < g.n; ++v) {
            if (sec[static_cast<size_t>(v)] >= 0) continue;
            int id = hs.sector_count[static_cast<size_t>(h)]++;
            std::vector<int> stack{v};
            sec[static_cast<size_t>(v)] = id;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : g.nbrs[static_cast<size_t>(x)]) {
                    if (sec[static_cast<size_t>(y)] >= 0) continue;
                    if (removed.count({std::min(x, y), std::max(x, y)})) continue;
                    sec[static_cast<size_t>(y)] = id;
                    stack.push_back(y);
                }
            }
        }
        // Every sector meets each member clique exactly once.
        for (int c : hs.hyp_cliques[static_cast<size_t>(h)]) {
            std::set<int> seen;
            for (int x : hs.cg.cliques[static_cast<size_t>(c)])
                if (!seen.insert(sec[static_cast<size_t>(x)]).second)
                    throw domain_error("hyperplane sector meets a member clique twice");
            if (static_cast<int>(seen.size()) != hs.sector_count[static_cast<size_t>(h)])
                throw domain_error("hyperplane sector misses a member clique");
        }
    }

    // Sector convexity (interval check); skipped on large graphs for cost.
    if (g.n <= 200) {
        for (int h = 0; h < hs.num_hyp; ++h) {
            const auto& sec = hs.sector_of[static_cast<size_t>(h)];
            for (int x = 0; x < g.n; ++x)
                for (int y = x + 1; y < g.n; ++y) {
                    if (sec[static_cast<size_t>(x)] != sec[static_cast<size_t>(y)]) continue;
                    for (int z = 0; z < g.n; ++z)
                        if (hs.cg.dist[static_cast<size_t>(x)][static_cast<size_t>(z)] +
                                    hs.cg.dist[static_cast<size_t>(z)][static_cast<size_t>(y)] ==
                                hs.cg.dist[static_cast<size_t>(x)][static_cast<size_t>(y)] &&
                            sec[static_cast<size_t>(z)] != sec[static_cast<size_t>(x)])
                            throw domain_error("hyperplane sector is not convex");
                }
        }
    }

    // Transversality.
    hs.transverse.assign(static_cast<size_t>(hs.num_hyp),
                         std::vector<char>(static_cast<size_t>(hs.num_hyp), 0));
    for (int a = 0; a < hs.num_hyp; ++a)
        for (int b = a + 1; b < hs.num_hyp; ++b) {
            int sa = hs.sector_count[static_cast<size_t>(a)];
            int sb = hs.sector_count[static_cast<size_t>(b)];
            std::vector<std::vector<char>> meet(static_cast<size_t>(sa),
                                                std::vector<char>(static_cast<size_t>(sb), 0));
            for (int v = 0; v < g.n; ++v)
                meet[static_cast<size_t>(hs.sector_of[static_cast<size_t>(a)][static_cast<size_t>(v)])]
                    [static_cast<size_t>(hs.sector_of[static_cast<size_t>(b)][static_cast<size_t>(v)])] = 1;
            bool all = true;
            for (auto& row : meet)
                for (char m : row) all = all && m;
            hs.transverse[static_cast<size_t>(a)][static_cast<size_t>(b)] = all ? 1 : 0;
            hs.transverse[static_cast<size_t>(b)][static_cast<size_t>(a)] = all ? 1 : 0;
        }
    return hs;
}

// ----------------------------------------------------------- axiom checks

struct AxiomReport {
    bool k4minus_free = true;
    bool triangle_condition = true;
    bool quadrangle_condition = true;
    bool k32_free = true;
    bool cycle_condition = true;
    bool even_cycle_intersection = true;
    bool clique_gated = true;
    bool parallelism_transitive = true;
    std::string first_counterexample;   // first failed condition, human-readable

    bool paraclique() const { return clique_gated && parallelism_transitive; }
    bool mediangle() const {
        return triangle_condition && k4minus_free && cycle_condition && even_cycle_intersection;
    }
    bool quasimedian() const {
        return triangle_condition && k4minus_free && quadrangle_condition && k32_free;
    }
};

/// Convex even cycles, each given in cyclic vertex order.  Found as intervals
/// of antipodal pairs: a convex 2k-cycle is exactly the interval of any of its
/// antipodal pairs.
inline std::vector<std::vector<int>> convex_even_cycles(const FiniteGraph& g,
                                                        const std::vector<std::vector<int>>& dist) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    for (int x = 0; x < g.n; ++x)
        for (int z = x + 1; z < g.n; ++z) {
            int d = dist[static_cast<size_t>(x)][static_cast<size_t>(z)];
            if (d < 2) continue;
            std::vector<int> I;
            for (int v = 0; v < g.n; ++v)
                if (dist[static_cast<size_t>(x)][static_cast<size_t>(v)] +
                        dist[static_cast<size_t>(v)][static_cast<size_t>(z)] == d)
                    I.push_back(v);
            if (static_cast<int>(I.size()) != 2 * d) continue;
            std::set<int> in_I(I.begin(), I.end());
            bool cyclic = true;
            for (int v : I) {
                int deg = 0;
                for (int w : g.nbrs[static_cast<size_t>(v)]) deg += in_I.count(w) ? 1 : 0;
                if (deg != 2) { cyclic = false; break; }
            }
            if (!cyclic) continue;
            // Convexity of the candidate cycle.
            bool convex = true;
            for (size_t i = 0; i < I.size() && convex; ++i)
                for (size_t j = i + 1; j < I.size() && convex; ++j) {
                    int a = I[i], b = I[j];
                    for (int w = 0; w < g.n; ++w)
                        if (dist[static_cast<size_t>(a)][static_cast<size_t>(w)] +
                                    dist[static_cast<size_t>(w)][static_cast<size_t>(b)] ==
                                dist[static_cast<size_t>(a)][static_cast<size_t>(b)] &&
                            !in_I.count(w)) {
                            convex = false;
                            break;
                        }
                }
            if (!convex) continue;
            std::vector<int> key = I;   // already sorted by construction
            if (!seen.insert(key).second) continue;
            // Trace the cyclic order.
            std::vector<int> order{I[0]};
            int prev = -1, cur = I[0];
            while (static_cast<int>(order.size()) < 2 * d) {
                for (int w : g.nbrs[static_cast<size_t>(cur)])
                    if (w != prev && in_I.count(w)) {
                        prev = cur;
                        cur = w;
                        order.push_back(w);
                        break;
                    }
            }
            out.push_back(std::move(order));
        }
    return out;
}

inline AxiomReport check_axioms(const FiniteGraph& g, size_t size_bound = 5000) {
    if (static_cast<size_t>(g.n) > size_bound)
        throw resource_error("graph exceeds the axiom-check size bound of " + std::to_string(size_bound));
    if (!g.connected()) throw domain_error("graph is not connected");
    AxiomReport r;
    auto dist = g.all_pairs_dist();
    auto fail = [&r](bool& flag, const std::string& msg) {
        if (flag && r.first_counterexample.empty()) r.first_counterexample = msg;
        flag = false;
    };

    // Induced K4^-: an edge with two non-adjacent common neighbours.
    for (int u = 0; u < g.n && r.k4minus_free; ++u)
        for (int v : g.nbrs[static_cast<size_t>(u)]) {
            if (v < u) continue;
            std::vector<int> common;
            for (int w : g.nbrs[static_cast<size_t>(u)])
                if (g.adjacent(v, w)) common.push_back(w);
            for (size_t i = 0; i < common.size() && r.k4minus_free; ++i)
                for (size_t j = i + 1; j < common.size(); ++j)
                    if (!g.adjacent(common[i], common[j])) {
                        fail(r.k4minus_free,
                             "K4- on {" + std::to_string(u) + "," + std::to_string(v) + "," +
                                 std::to_string(common[i]) + "," + std::to_string(common[j]) + "}");
                        break;
                    }
            if (!r.k4minus_free) break;
        }

    // Triangle condition.
    for (int o = 0; o < g.n && r.triangle_condition; ++o)
        for (int x = 0; x < g.n && r.triangle_condition; ++x)
            for (int y : g.nbrs[static_cast<size_t>(x)]) {
                if (y < x) continue;
                int dx = dist[static_cast<size_t>(o)][static_cast<size_t>(x)];
                if (dx != dist[static_cast<size_t>(o)][static_cast<size_t>(y)] || dx == 0) continue;
                bool found = false;
                for (int z : g.nbrs[static_cast<size_t>(x)])
                    if (g.adjacent(z, y) &&
                        dist[static_cast<size_t>(o)][static_cast<size_t>(z)] == dx - 1) {
                        found = true;
                        break;
                    }
                if (!found) {
                    fail(r.triangle_condition, "triangle condition fails at o=" + std::to_string(o) +
                                                   " edge {" + std::to_string(x) + "," +
                                                   std::to_string(y) + "}");
                    break;
                }
            }

    // Quadrangle condition.
    for (int o = 0; o < g.n && r.quadrangle_condition; ++o)
        for (int z = 0; z < g.n && r.quadrangle_condition; ++z) {
            int dz = dist[static_cast<size_t>(o)][static_cast<size_t>(z)];
            if (dz < 2) continue;
            const auto& nz = g.nbrs[static_cast<size_t>(z)];
            for (size_t i = 0; i < nz.size() && r.quadrangle_condition; ++i)
                for (size_t j = i + 1; j < nz.size(); ++j) {
                    int x = nz[i], y = nz[j];
                    if (dist[static_cast<size_t>(o)][static_cast<size_t>(x)] != dz - 1 ||
                        dist[static_cast<size_t>(o)][static_cast<size_t>(y)] != dz - 1)
                        continue;
                    bool found = false;
                    for (int w : g.nbrs[static_cast<size_t>(x)])
                        if (g.adjacent(w, y) &&
                            dist[static_cast<size_t>(o)][static_cast<size_t>(w)] == dz - 2) {
                            found = true;
                            break;
                        }
                    if (!found) {
                        fail(r.quadrangle_condition,
                             "quadrangle condition fails at o=" + std::to_string(o) + " z=" +
                                 std::to_string(z) + " x=" + std::to_string(x) + " y=" +
                                 std::to_string(y));
                        break;
                    }
                }
        }

    // Induced K_{3,2}: non-adjacent pair with 3 pairwise non-adjacent common neighbours.
    for (int a = 0; a < g.n && r.k32_free; ++a)
        for (int b = a + 1; b < g.n && r.k32_free; ++b) {
            if (g.adjacent(a, b)) continue;
            std::vector<int> common;
            for (int w : g.nbrs[static_cast<size_t>(a)])
                if (g.adjacent(b, w)) common.push_back(w);
            if (common.size() < 3) continue;
            for (size_t i = 0; i < common.size() && r.k32_free; ++i)
                for (size_t j = i + 1; j < common.size() && r.k32_free; ++j)
                    for (size_t k = j + 1; k < common.size(); ++k)
                        if (!g.adjacent(common[i], common[j]) && !g.adjacent(common[i], common[k]) &&
                            !g.adjacent(common[j], common[k])) {
                            fail(r.k32_free, "K_{3,2} on parts {" + std::to_string(a) + "," +
                                                 std::to_string(b) + "} and {" +
                                                 std::to_string(common[i]) + "," +
                                                 std::to_string(common[j]) + "," +
                                                 std::to_string(common[k]) + "}");
                            break;
                        }
        }

    // Cycle condition and intersection of even cycles.
    auto cycles = convex_even_cycles(g, dist);
    std::vector<std::vector<std::pair<int, size_t>>> at_vertex(static_cast<size_t>(g.n));
    for (size_t c = 0; c < cycles.size(); ++c)
        for (size_t pos = 0; pos < cycles[c].size(); ++pos)
            at_vertex[static_cast<size_t>(cycles[c][pos])].push_back({static_cast<int>(pos), c});

    for (int o = 0; o < g.n && r.cycle_condition; ++o)
        for (int z = 0; z < g.n && r.cycle_condition; ++z) {
            int dz = dist[static_cast<size_t>(o)][static_cast<size_t>(z)];
            if (dz < 1) continue;
            const auto& nz = g.nbrs[static_cast<size_t>(z)];
            for (size_t i = 0; i < nz.size() && r.cycle_condition; ++i)
                for (size_t j = i + 1; j < nz.size(); ++j) {
                    int x = nz[i], y = nz[j];
                    if (dist[static_cast<size_t>(o)][static_cast<size_t>(x)] != dz - 1 ||
                        dist[static_cast<size_t>(o)][static_cast<size_t>(y)] != dz - 1)
                        continue;
                    bool found = false;
                    for (auto [pos, c] : at_vertex[static_cast<size_t>(z)]) {
                        const auto& cyc = cycles[c];
                        int len = static_cast<int>(cyc.size());
                        int prev = cyc[static_cast<size_t>((pos + len - 1) % len)];
                        int next = cyc[static_cast<size_t>((pos + 1) % len)];
                        if (!((prev == x && next == y) || (prev == y && next == x))) continue;
                        int opp = cyc[static_cast<size_t>((pos + len / 2) % len)];
                        int dox = dist[static_cast<size_t>(o)][static_cast<size_t>(x)];
                        if (dist[static_cast<size_t>(o)][static_cast<size_t>(opp)] +
                                    dist[static_cast<size_t>(opp)][static_cast<size_t>(x)] == dox &&
                            dist[static_cast<size_t>(o)][static_cast<size_t>(opp)] +
                                    dist[static_cast<size_t>(opp)][static_cast<size_t>(y)] == dox) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        fail(r.cycle_condition, "cycle condition fails at o=" + std::to_string(o) +
                                                    " z=" + std::to_string(z) + " x=" +
                                                    std::to_string(x) + " y=" + std::to_string(y));
                        break;
                    }
                }
        }

    for (size_t a = 0; a < cycles.size() && r.even_cycle_intersection; ++a)
        for (size_t b = a + 1; b < cycles.size(); ++b) {
            std::set<std::pair<int, int>> ea;
            for (size_t i = 0; i < cycles[a].size(); ++i) {
                int u = cycles[a][i], v = cycles[a][(i + 1) % cycles[a].size()];
                ea.insert({std::min(u, v), std::max(u, v)});
            }
            int shared = 0;
            for (size_t i = 0; i < cycles[b].size(); ++i) {
                int u = cycles[b][i], v = cycles[b][(i + 1) % cycles[b].size()];
                shared += ea.count({std::min(u, v), std::max(u, v)}) ? 1 : 0;
            }
            if (shared > 1) {
                fail(r.even_cycle_intersection, "convex even cycles " + std::to_string(a) + " and " +
                                                    std::to_string(b) + " share " +
                                                    std::to_string(shared) + " edges");
                break;
            }
        }

    // Direct clique-gatedness and parallelism transitivity.
    auto cg = compute_cliques_and_gates(g);
    if (!cg.clique_gated)
        fail(r.clique_gated, "vertex " + std::to_string(cg.fail_vertex) + " has no gate in clique " +
                                 std::to_string(cg.fail_clique));
    if (cg.clique_gated) {
        try {
            compute_hyperplanes(g);
        } catch (const domain_error& e) {
            fail(r.parallelism_transitive, e.what());
        }
    } else {
        r.parallelism_transitive = false;
    }
    return r;
}

/// Alternative hyperplane relation: transitive closure of "share a 3-cycle or
/// opposite in a convex even cycle", returned as edge classes.
inline std::vector<std::set<std::pair<int, int>>> hyperplanes_by_cycle_closure(const FiniteGraph& g) {
    auto dist = g.all_pairs_dist();
    std::map<std::pair<int, int>, int> edge_id;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.nbrs[static_cast<size_t>(u)])
            if (u < v) {
                edge_id[{u, v}] = static_cast<int>(edges.size());
                edges.push_back({u, v});
            }
    std::vector<int> uf(edges.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[static_cast<size_t>(x)] == x ? x : uf[static_cast<size_t>(x)] = find(uf[static_cast<size_t>(x)]); };
    auto unite = [&](std::pair<int, int> a, std::pair<int, int> b) {
        int ra = find(edge_id.at({std::min(a.first, a.second), std::max(a.first, a.second)}));
        int rb = find(edge_id.at({std::min(b.first, b.second), std::max(b.first, b.second)}));
        uf[static_cast<size_t>(ra)] = rb;
    };
    // 3-cycles.
    for (int u = 0; u < g.n; ++u)
        for (int v : g.nbrs[static_cast<size_t>(u)])
            for (int w : g.nbrs[static_cast<size_t>(v)])
                if (u < v && v < w && g.adjacent(u, w)) {
                    unite({u, v}, {v, w});
                    unite({v, w}, {u, w});
                }
    // Opposite edges of convex even cycles.
    for (const auto& cyc : convex_even_cycles(g, dist)) {
        size_t len = cyc.size();
        for (size_t i = 0; i < len / 2; ++i) {
            auto e1 = std::make_pair(cyc[i], cyc[(i + 1) % len]);
            auto e2 = std::make_pair(cyc[i + len / 2], cyc[(i + len / 2 + 1) % len]);
            unite(e1, e2);
        }
    }
    std::map<int, std::set<std::pair<int, int>>> classes;
    for (size_t e = 0; e < edges.size(); ++e) classes[find(static_cast<int>(e))].insert(edges[e]);
    std::vector<std::set<std::pair<int, int>>> out;
    for (auto& [root, cls] : classes) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------ Hamming embedding

/// Coordinates of each vertex: its gate in one representative clique per
/// hyperplane.  Hamming distance equals graph distance (verified).
inline std::vector<std::vector<int>> hamming_embedding(const FiniteGraph& g) {
    HyperplaneStructure hs = compute_hyperplanes(g);
    std::vector<std::vector<int>> coords(static_cast<size_t>(g.n),
                                         std::vector<int>(static_cast<size_t>(hs.num_hyp)));
    for (int v = 0; v < g.n; ++v)
        for (int h = 0; h < hs.num_hyp; ++h)
            coords[static_cast<size_t>(v)][static_cast<size_t>(h)] =
                hs.cg.gate[static_cast<size_t>(hs.rep_clique(h))][static_cast<size_t>(v)];
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y) {
            int hd = 0;
            for (int h = 0; h < hs.num_hyp; ++h)
                hd += coords[static_cast<size_t>(x)][static_cast<size_t>(h)] !=
                      coords[static_cast<size_t>(y)][static_cast<size_t>(h)];
            if (hd != hs.cg.dist[static_cast<size_t>(x)][static_cast<size_t>(y)])
                throw std::logic_error("Hamming embedding verification failed");
        }
    return coords;
}

} // namespace peria

#endif
