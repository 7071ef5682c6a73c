#ifndef PERIA_CAYLEY_HPP
#define PERIA_CAYLEY_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peria/graphcore.hpp"
#include "peria/metrics.hpp"
#include "peria/words.hpp"

namespace peria {

// Finite-radius exploration of the Cayley graph, either over the full vertex
// groups (one edge per nonidentity coset element) or over the declared
// per-vertex generating sets.

enum class BallMode { Full, SGen };

struct BallEdge {
    int to;
    int gamma_vertex;   // vertex of the defining graph labelling the edge
    Elem elem;          // group element multiplied on the right
};

struct BallOptions {
    // Exponent cap for cyclic-infinite vertex groups in full mode: elements
    // whose reduced form carries an exponent beyond the cap are cut off.
    int cap = 0;
    size_t max_vertices = 200000;
    bool want_hyperplanes = true;
    // The dense adjacency matrix is quadratic in the ball size; callers that
    // only need vertices and distances can switch it off (this also skips
    // the hyperplane analysis).
    bool want_graph = true;
};

struct ExploredBall {
    PeriagroupPresentation pres;
    CanonicalForm center;
    int radius = 0;
    BallMode mode = BallMode::Full;
    int cap = 0;

    std::vector<CanonicalForm> verts;         // verts[0] == center
    std::map<Word, int> index;                // canonical word -> intern id
    std::vector<std::vector<BallEdge>> nbrs;  // directed labels, both ways
    std::vector<int> dist;                    // BFS distance from the center
    FiniteGraph graph;

    // Full-mode balls carry the paraclique analysis of the underlying graph
    // when it goes through; otherwise the failure reason is kept.
    std::optional<HyperplaneStructure> hyp;
    std::string hyp_error;

    int id_of(const CanonicalForm& c) const {
        auto it = index.find(c.word);
        return it == index.end() ? -1 : it->second;
    }

    const HyperplaneStructure& hyperplanes() const {
        if (!hyp) throw domain_error("ball has no hyperplane structure: " + hyp_error);
        return *hyp;
    }
};

namespace detail {

inline bool within_cap(const PeriagroupPresentation& p, const Word& w, int cap) {
    for (const Syllable& s : w)
        if (p.spec(s.vertex).kind == GroupKind::CyclicInfinite &&
            (s.elem > cap || s.elem < -cap))
            return false;
    return true;
}

/// Per-vertex multiplier elements defining the ball's edge set.
inline std::vector<std::vector<Elem>> ball_multipliers(const PeriagroupPresentation& p,
                                                       BallMode mode, int cap) {
    std::vector<std::vector<Elem>> out(static_cast<size_t>(p.n()));
    for (int v = 0; v < p.n(); ++v) {
        const VertexGroupSpec& g = p.spec(v);
        if (g.is_opaque()) throw domain_error("cannot explore a ball over opaque vertex " + p.name(v));
        if (mode == BallMode::SGen) {
            out[static_cast<size_t>(v)] = g.gens.empty() ? g.default_gens() : g.gens;
        } else if (g.is_finite()) {
            out[static_cast<size_t>(v)] = g.nonidentity_elements();
        } else {
            if (cap <= 0)
                throw domain_error("full mode over cyclic-infinite vertex " + p.name(v) +
                                   " needs an exponent cap");
            // Reach every element of the capped coset segment from every
            // other, so the segment stays a clique.
            for (Elem e = 1; e <= 2 * static_cast<Elem>(cap); ++e) {
                out[static_cast<size_t>(v)].push_back(e);
                out[static_cast<size_t>(v)].push_back(-e);
            }
        }
    }
    return out;
}

}   // namespace detail

inline ExploredBall explore_ball(const PeriagroupPresentation& p, const Word& center, int radius,
                                 BallMode mode, BallOptions opt = {}) {
    if (radius < 0) throw domain_error("negative radius");
    ExploredBall b;
    b.pres = p;
    b.radius = radius;
    b.mode = mode;
    b.cap = opt.cap;
    auto mult = detail::ball_multipliers(p, mode, opt.cap);

    b.center = canonical_form(p, center);
    if (mode == BallMode::Full && opt.cap > 0 && !detail::within_cap(p, b.center.word, opt.cap))
        throw domain_error("center exceeds the exponent cap");
    b.verts.push_back(b.center);
    b.index[b.center.word] = 0;
    b.nbrs.emplace_back();
    b.dist.push_back(0);

    std::set<std::tuple<int, int, int, Elem>> seen_label;
    std::deque<int> queue = {0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int v = 0; v < p.n(); ++v)
            for (Elem e : mult[static_cast<size_t>(v)]) {
                Word w = b.verts[static_cast<size_t>(cur)].word;
                w.push_back({v, e});
                CanonicalForm c = canonical_form(p, std::move(w));
                if (mode == BallMode::Full && opt.cap > 0 &&
                    !detail::within_cap(p, c.word, opt.cap))
                    continue;
                auto it = b.index.find(c.word);
                int nid;
                if (it != b.index.end()) {
                    nid = it->second;
                } else {
                    if (b.dist[static_cast<size_t>(cur)] >= radius) continue;
                    nid = static_cast<int>(b.verts.size());
                    if (b.verts.size() >= opt.max_vertices)
                        throw resource_error("ball exceeds the vertex bound");
                    b.index[c.word] = nid;
                    b.verts.push_back(std::move(c));
                    b.nbrs.emplace_back();
                    b.dist.push_back(b.dist[static_cast<size_t>(cur)] + 1);
                    queue.push_back(nid);
                }
                if (nid == cur) continue;
                if (seen_label.insert({cur, nid, v, e}).second)
                    b.nbrs[static_cast<size_t>(cur)].push_back({nid, v, e});
                Elem einv = p.spec(v).kind == GroupKind::CyclicInfinite ? -e : p.spec(v).inv(e);
                if (seen_label.insert({nid, cur, v, einv}).second)
                    b.nbrs[static_cast<size_t>(nid)].push_back({cur, v, einv});
            }
    }

    if (opt.want_graph) {
        b.graph.reset(static_cast<int>(b.verts.size()));
        for (int u = 0; u < b.graph.n; ++u)
            for (const BallEdge& e : b.nbrs[static_cast<size_t>(u)])
                if (u < e.to) b.graph.add_edge(u, e.to);
    }

    if (opt.want_graph && mode == BallMode::Full && opt.want_hyperplanes) {
        try {
            b.hyp = compute_hyperplanes(b.graph);
        } catch (const domain_error& ex) {
            b.hyp_error = ex.what();
        }
    }
    return b;
}

/// Group element carried by the word `u^-1 v` for interned ball vertices.
inline CanonicalForm ball_difference(const ExploredBall& b, int u, int v) {
    Word w = invert_word(b.pres, b.verts[static_cast<size_t>(u)].word);
    const Word& vw = b.verts[static_cast<size_t>(v)].word;
    w.insert(w.end(), vw.begin(), vw.end());
    return canonical_form(b.pres, std::move(w));
}

// ------------------------------------------------------------- hyperplanes

struct HyperplaneTypeReport {
    std::set<int> labels;             // defining-graph vertices on the edges
    bool right = false;               // single label whose star is all label 2
    bool carrier_in_star_coset = false;
    int certified_radius = 0;
};

inline std::set<int> edge_labels_of_hyperplane(const ExploredBall& b, int J) {
    const HyperplaneStructure& hs = b.hyperplanes();
    if (J < 0 || J >= hs.num_hyp) throw domain_error("no such hyperplane");
    std::set<int> labels;
    for (auto [u, v] : hs.hyp_edges[static_cast<size_t>(J)])
        for (const BallEdge& e : b.nbrs[static_cast<size_t>(u)])
            if (e.to == v) labels.insert(e.gamma_vertex);
    return labels;
}

inline HyperplaneTypeReport hyperplane_type_and_label(const ExploredBall& b, int J) {
    const HyperplaneStructure& hs = b.hyperplanes();
    HyperplaneTypeReport r;
    r.certified_radius = b.radius;
    r.labels = edge_labels_of_hyperplane(b, J);
    if (r.labels.size() != 1) return r;
    int u = *r.labels.begin();
    for (int w = 0; w < b.pres.n(); ++w)
        if (w != u && b.pres.graph.adjacent(u, w) && b.pres.graph.label(u, w) != 2)
            return r;
    r.right = true;

    // The carrier must sit inside one coset of the subgroup generated by the
    // star of the label, as far as the ball can see.
    std::set<int> star = {u};
    for (int w = 0; w < b.pres.n(); ++w)
        if (b.pres.graph.adjacent(u, w)) star.insert(w);
    std::vector<int> carrier;
    for (int c : hs.hyp_cliques[static_cast<size_t>(J)])
        for (int x : hs.cg.cliques[static_cast<size_t>(c)]) carrier.push_back(x);
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    r.carrier_in_star_coset = true;
    for (int x : carrier) {
        CanonicalForm d = ball_difference(b, carrier[0], x);
        for (const Syllable& s : d.word)
            if (!star.count(s.vertex)) {
                r.carrier_in_star_coset = false;
                return r;
            }
    }
    return r;
}

// ------------------------------------------------------------ parabolics

struct ParabolicCoset {
    CanonicalForm rep;
    std::set<int> lambda;   // subgraph of the defining graph
    int height() const { return static_cast<int>(lambda.size()); }
};

inline std::vector<int> coset_members(const ExploredBall& b, const ParabolicCoset& coset) {
    Word rep_inv = invert_word(b.pres, coset.rep.word);
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(b.verts.size()); ++i) {
        Word w = rep_inv;
        const Word& vw = b.verts[static_cast<size_t>(i)].word;
        w.insert(w.end(), vw.begin(), vw.end());
        CanonicalForm d = canonical_form(b.pres, std::move(w));
        bool in = true;
        for (const Syllable& s : d.word)
            if (!coset.lambda.count(s.vertex)) { in = false; break; }
        if (in) out.push_back(i);
    }
    return out;
}

struct GateResult {
    int gate = -1;
    std::set<int> xi;   // labels of the edges geodesics enter the gate by
    int certified_radius = 0;
};

inline GateResult parabolic_gate(const ExploredBall& b, int x, const ParabolicCoset& coset) {
    if (x < 0 || x >= b.graph.n) throw domain_error("vertex not in ball");
    auto members = coset_members(b, coset);
    if (members.empty()) throw domain_error("coset does not meet the ball");
    auto dx = b.graph.bfs_dist(x);
    int x0 = members[0];
    for (int y : members)
        if (dx[static_cast<size_t>(y)] < dx[static_cast<size_t>(x0)]) x0 = y;
    // Certificate: every geodesic from x to the candidate stays inside the
    // ball, and no out-of-ball coset element can be closer.
    if (b.dist[static_cast<size_t>(x)] + dx[static_cast<size_t>(x0)] > b.radius)
        throw resource_error("gate not certifiable; increase radius");
    auto d0 = b.graph.bfs_dist(x0);
    for (int y : members)
        if (dx[static_cast<size_t>(y)] !=
            dx[static_cast<size_t>(x0)] + d0[static_cast<size_t>(y)])
            throw resource_error("gate not certifiable; increase radius");

    GateResult r;
    r.gate = x0;
    r.certified_radius = b.radius;
    for (const BallEdge& e : b.nbrs[static_cast<size_t>(x0)])
        if (dx[static_cast<size_t>(e.to)] + 1 == dx[static_cast<size_t>(x0)])
            r.xi.insert(e.gamma_vertex);
    return r;
}

// ------------------------------------------------------------ contraction

struct ContractionProfile {
    bool bounded_orbit = false;
    int radius = 0;
    // One row per offset: distance from the sample ball's centre to the
    // orbit, and the largest projection diameter seen at that offset.
    std::vector<std::pair<int, int>> rows;
};

namespace detail {

inline Word word_power(const PeriagroupPresentation& p, const Word& g, int n) {
    Word base = n < 0 ? invert_word(p, g) : g;
    Word out;
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

}   // namespace detail

inline ContractionProfile contraction_profile(const PeriagroupPresentation& p, const Word& g,
                                              int radius) {
    ContractionProfile out;
    out.radius = radius;
    CanonicalForm cg = canonical_form(p, g);
    if (cg.is_identity()) {
        out.bounded_orbit = true;
        return out;
    }
    ExploredBall b = explore_ball(p, {}, radius, BallMode::SGen);

    // Orbit points of <g> inside the ball; a return to the identity means the
    // orbit is finite.
    std::vector<int> orbit = {0};
    std::vector<CanonicalForm> orbit_cf = {CanonicalForm{}};
    for (int sign : {1, -1}) {
        CanonicalForm cur;
        int misses = 0;
        for (int k = 1; k <= 4 * radius + 4 && misses < 2; ++k) {
            Word w = cur.word;
            Word step = sign > 0 ? g : invert_word(p, g);
            w.insert(w.end(), step.begin(), step.end());
            cur = canonical_form(p, std::move(w));
            if (cur.is_identity()) {
                out.bounded_orbit = true;
                return out;
            }
            int id = b.id_of(cur);
            if (id < 0) {
                ++misses;
            } else {
                misses = 0;
                orbit.push_back(id);
                orbit_cf.push_back(cur);
            }
        }
    }

    // Exact S-metric distances from every ball vertex to every orbit point.
    std::vector<std::vector<int>> D(b.verts.size(), std::vector<int>(orbit.size()));
    for (size_t i = 0; i < b.verts.size(); ++i) {
        Word wi = invert_word(p, b.verts[i].word);
        for (size_t j = 0; j < orbit.size(); ++j) {
            Word w = wi;
            w.insert(w.end(), orbit_cf[j].word.begin(), orbit_cf[j].word.end());
            D[i][j] = word_length_S(p, w);
        }
    }
    std::vector<std::vector<int>> orb_d(orbit.size(), std::vector<int>(orbit.size()));
    for (size_t i = 0; i < orbit.size(); ++i)
        for (size_t j = 0; j < orbit.size(); ++j)
            orb_d[i][j] = D[static_cast<size_t>(orbit[i])][j];

    std::vector<int> d_orbit(b.verts.size());
    for (size_t i = 0; i < b.verts.size(); ++i)
        d_orbit[i] = *std::min_element(D[i].begin(), D[i].end());

    std::map<int, int> best;   // offset -> max projection diameter
    for (int x = 0; x < b.graph.n; ++x) {
        int off = d_orbit[static_cast<size_t>(x)];
        if (off < 2) continue;
        auto dx = b.graph.bfs_dist(x);
        // Projection of the ball B(x, off-1), which is disjoint from the
        // orbit; ties contribute their whole nearest-point set.
        std::set<size_t> proj;
        for (int y = 0; y < b.graph.n; ++y) {
            if (dx[static_cast<size_t>(y)] > off - 1) continue;
            int m = *std::min_element(D[static_cast<size_t>(y)].begin(),
                                      D[static_cast<size_t>(y)].end());
            for (size_t j = 0; j < orbit.size(); ++j)
                if (D[static_cast<size_t>(y)][j] == m) proj.insert(j);
        }
        int diam = 0;
        for (size_t a : proj)
            for (size_t c : proj) diam = std::max(diam, orb_d[a][c]);
        auto it = best.find(off);
        if (it == best.end() || it->second < diam) best[off] = diam;
    }
    out.rows.assign(best.begin(), best.end());
    return out;
}

// --------------------------------------------------------------- skewering

struct SkewerWitness {
    int J = -1;          // hyperplane skewered
    int K = -1;          // its image under g^n
    int n = 0;
    int sector_small = -1;   // sector of K strictly inside sector_big of J
    int sector_big = -1;
    bool separated = false;
    long long L = 0;
    int radius = 0;
};

struct SkewerReport {
    std::optional<SkewerWitness> witness;
    int nested_pairs = 0;   // strictly nested (J, g^n J) pairs inspected
    int radius = 0;
    std::string note;
};

inline SkewerReport skewer_witness(const PeriagroupPresentation& p, const Word& g, int radius,
                                   BallOptions opt = {}) {
    bool needs_cap = false;
    for (int v = 0; v < p.n(); ++v)
        if (p.spec(v).kind == GroupKind::CyclicInfinite) needs_cap = true;
    if (needs_cap && opt.cap <= 0) opt.cap = radius;

    SkewerReport rep;
    rep.radius = radius;
    ExploredBall b = explore_ball(p, {}, radius, BallMode::Full, opt);
    const HyperplaneStructure& hs = b.hyperplanes();
    CanonicalForm cg = canonical_form(p, g);
    if (cg.is_identity()) {
        rep.note = "identity element";
        return rep;
    }
    // A finite-order element translates nothing; nested images seen in a
    // truncated ball would be reflection artifacts.
    {
        CanonicalForm cur;
        for (int k = 1; k <= 4 * radius + 4; ++k) {
            Word w = cur.word;
            w.insert(w.end(), cg.word.begin(), cg.word.end());
            cur = canonical_form(p, std::move(w));
            if (cur.is_identity()) {
                rep.note = "finite order element";
                return rep;
            }
            if (cur.syllable_count() > static_cast<size_t>(2 * radius + 2)) break;
        }
    }

    auto sector_sets = [&](int h) {
        auto raw = hs.sector_vertex_sets(h);
        std::vector<std::set<int>> out;
        for (auto& s : raw) out.emplace_back(s.begin(), s.end());
        return out;
    };
    std::vector<std::vector<std::set<int>>> sectors(static_cast<size_t>(hs.num_hyp));
    for (int h = 0; h < hs.num_hyp; ++h) sectors[static_cast<size_t>(h)] = sector_sets(h);

    for (int n = 1; n <= radius && !rep.witness; ++n) {
        Word gn = detail::word_power(p, cg.word, n);
        // Left translation by g^n, where the ball sees it.
        std::vector<int> phi(b.verts.size(), -1);
        for (size_t i = 0; i < b.verts.size(); ++i) {
            Word w = gn;
            const Word& vw = b.verts[i].word;
            w.insert(w.end(), vw.begin(), vw.end());
            phi[i] = b.id_of(canonical_form(p, std::move(w)));
        }
        for (int J = 0; J < hs.num_hyp && !rep.witness; ++J) {
            int K = -1;
            bool consistent = true, any = false;
            for (auto [u, v] : hs.hyp_edges[static_cast<size_t>(J)]) {
                int pu = phi[static_cast<size_t>(u)], pv = phi[static_cast<size_t>(v)];
                if (pu < 0 || pv < 0) continue;
                if (!b.graph.adjacent(pu, pv)) { consistent = false; break; }
                int h = hs.hyperplane_of_edge(pu, pv);
                if (!any) { K = h; any = true; }
                else if (h != K) { consistent = false; break; }
            }
            if (!consistent || !any || K == J) continue;
            for (size_t a = 0; a < sectors[static_cast<size_t>(K)].size() && !rep.witness; ++a)
                for (size_t c = 0; c < sectors[static_cast<size_t>(J)].size(); ++c) {
                    const auto& small = sectors[static_cast<size_t>(K)][a];
                    const auto& big = sectors[static_cast<size_t>(J)][c];
                    if (small.size() >= big.size()) continue;
                    if (!std::includes(big.begin(), big.end(), small.begin(), small.end()))
                        continue;
                    ++rep.nested_pairs;
                    auto ws = well_separated_check(hs, J, K);
                    if (!ws.separated) continue;
                    SkewerWitness w;
                    w.J = J;
                    w.K = K;
                    w.n = n;
                    w.sector_small = static_cast<int>(a);
                    w.sector_big = static_cast<int>(c);
                    w.separated = true;
                    w.L = ws.L;
                    w.radius = radius;
                    rep.witness = w;
                    break;
                }
        }
    }
    if (!rep.witness)
        rep.note = rep.nested_pairs > 0 ? "nested pairs found but none well-separated"
                                        : "no strictly nested image pair in the ball";
    return rep;
}

// ------------------------------------------------------------------ export

inline std::string ball_graph_text(const ExploredBall& b) { return format_graph(b.graph); }

inline std::string ball_vertex_table(const ExploredBall& b) {
    std::ostringstream os;
    for (size_t i = 0; i < b.verts.size(); ++i)
        os << i << '\t' << b.dist[i] << '\t' << format_word(b.pres, b.verts[i].word) << '\n';
    return os.str();
}

}   // namespace peria

#endif
