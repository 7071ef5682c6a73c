#ifndef PERIA_PARTITIONS_HPP
#define PERIA_PARTITIONS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peria/graphcore.hpp"

namespace peria {

struct PartitionSpace {
    int ground = 0;
    // partitions[p][s] = sorted list of ground elements of sector s.
    std::vector<std::vector<std::vector<int>>> partitions;

    size_t num_partitions() const { return partitions.size(); }
};

/// `.parts` format: ground-set size, then one partition per line with sectors
/// as `|`-separated id lists.
inline PartitionSpace parse_parts(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    PartitionSpace ps;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream probe(stripped);
        std::string tok;
        if (!(probe >> tok)) continue;
        if (!have_n) {
            try {
                ps.ground = std::stoi(tok);
            } catch (const std::exception&) {
                throw parse_error(lineno, "expected ground-set size");
            }
            if (ps.ground <= 0) throw parse_error(lineno, "ground-set size must be positive");
            have_n = true;
            continue;
        }
        std::vector<std::vector<int>> sectors;
        std::vector<int> cur;
        std::istringstream ss(stripped);
        while (ss >> tok) {
            if (tok == "|") {
                sectors.push_back(cur);
                cur.clear();
                continue;
            }
            int v;
            try {
                v = std::stoi(tok);
            } catch (const std::exception&) {
                throw parse_error(lineno, "sector entries must be integers or '|'");
            }
            if (v < 0 || v >= ps.ground) throw parse_error(lineno, "ground element out of range");
            cur.push_back(v);
        }
        sectors.push_back(cur);
        for (auto& s : sectors) std::sort(s.begin(), s.end());
        ps.partitions.push_back(std::move(sectors));
    }
    if (!have_n) throw domain_error("empty .parts input");
    return ps;
}

namespace detail {

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool sectors_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib) ++ia; else ++ib;
    }
    return false;
}

/// P and Q are nested: some A in P and B in Q with all other sectors of Q
/// inside A and all other sectors of P inside B.
inline bool partitions_nested(const std::vector<std::vector<int>>& P,
                              const std::vector<std::vector<int>>& Q) {
    for (size_t a = 0; a < P.size(); ++a)
        for (size_t b = 0; b < Q.size(); ++b) {
            bool ok = true;
            for (size_t d = 0; d < Q.size() && ok; ++d)
                if (d != b && !subset_of(Q[d], P[a])) ok = false;
            for (size_t d = 0; d < P.size() && ok; ++d)
                if (d != a && !subset_of(P[d], Q[b])) ok = false;
            if (ok) return true;
        }
    return false;
}

inline bool partitions_transverse(const std::vector<std::vector<int>>& P,
                                  const std::vector<std::vector<int>>& Q) {
    for (const auto& A : P)
        for (const auto& B : Q)
            if (subset_of(A, B) || subset_of(B, A)) return false;
    return true;
}

} // namespace detail

inline void validate_partition_space(const PartitionSpace& ps) {
    for (size_t p = 0; p < ps.partitions.size(); ++p) {
        const auto& P = ps.partitions[p];
        if (P.size() < 2)
            throw domain_error("partition " + std::to_string(p) + " has fewer than 2 sectors");
        std::vector<int> covered(static_cast<size_t>(ps.ground), 0);
        for (const auto& S : P) {
            if (S.empty()) throw domain_error("partition " + std::to_string(p) + " has an empty sector");
            for (int v : S) {
                if (covered[static_cast<size_t>(v)]++)
                    throw domain_error("partition " + std::to_string(p) +
                                       " has overlapping sectors (element " + std::to_string(v) + ")");
            }
        }
        for (int v = 0; v < ps.ground; ++v)
            if (!covered[static_cast<size_t>(v)])
                throw domain_error("partition " + std::to_string(p) + " does not cover element " +
                                   std::to_string(v));
    }
    // Nestedness axiom: a sector of one partition inside a sector of another
    // forces the two partitions to be nested.
    for (size_t p = 0; p < ps.partitions.size(); ++p)
        for (size_t q = 0; q < ps.partitions.size(); ++q) {
            if (p == q) continue;
            bool comparable = false;
            for (const auto& A : ps.partitions[p]) {
                for (const auto& B : ps.partitions[q])
                    if (detail::subset_of(A, B)) { comparable = true; break; }
                if (comparable) break;
            }
            if (comparable && !detail::partitions_nested(ps.partitions[p], ps.partitions[q]))
                throw domain_error("nestedness axiom fails for partitions " + std::to_string(p) +
                                   " and " + std::to_string(q));
        }
}

struct QuasiCubulation {
    FiniteGraph graph;
    // orientation[v] = chosen sector index per partition.
    std::vector<std::vector<int>> orientations;
    // principal[x] = graph vertex carrying the principal orientation of ground point x.
    std::vector<int> principal;
};

/// Connected component of the principal orientations under single-partition
/// flips, with the distance law and hyperplane-partition correspondence
/// verified on the finite result.
inline QuasiCubulation quasi_cubulate(const PartitionSpace& ps, size_t bound = 200000) {
    validate_partition_space(ps);
    const size_t np = ps.num_partitions();

    // sector_of_point[p][x] = index of the sector of partition p holding x.
    std::vector<std::vector<int>> sector_of_point(np, std::vector<int>(static_cast<size_t>(ps.ground), -1));
    for (size_t p = 0; p < np; ++p)
        for (size_t s = 0; s < ps.partitions[p].size(); ++s)
            for (int v : ps.partitions[p][s]) sector_of_point[p][static_cast<size_t>(v)] = static_cast<int>(s);

    // Pairwise sector-intersection tables.
    std::vector<std::vector<std::vector<std::vector<char>>>> meets(np);
    for (size_t p = 0; p < np; ++p) {
        meets[p].resize(np);
        for (size_t q = 0; q < np; ++q) {
            meets[p][q].assign(ps.partitions[p].size(),
                               std::vector<char>(ps.partitions[q].size(), 0));
            for (size_t a = 0; a < ps.partitions[p].size(); ++a)
                for (size_t b = 0; b < ps.partitions[q].size(); ++b)
                    meets[p][q][a][b] =
                        detail::sectors_intersect(ps.partitions[p][a], ps.partitions[q][b]) ? 1 : 0;
        }
    }
    auto orientation_valid_at = [&](const std::vector<int>& o, size_t changed) {
        for (size_t q = 0; q < np; ++q) {
            if (q == changed) continue;
            if (!meets[changed][q][static_cast<size_t>(o[changed])][static_cast<size_t>(o[q])])
                return false;
        }
        return true;
    };

    QuasiCubulation qc;
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> frontier;
    qc.principal.assign(static_cast<size_t>(ps.ground), -1);
    for (int x = 0; x < ps.ground; ++x) {
        std::vector<int> o(np);
        for (size_t p = 0; p < np; ++p) o[p] = sector_of_point[p][static_cast<size_t>(x)];
        auto [it, fresh] = id.emplace(o, static_cast<int>(qc.orientations.size()));
        if (fresh) {
            qc.orientations.push_back(o);
            frontier.push_back(o);
        }
        qc.principal[static_cast<size_t>(x)] = it->second;
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& o : frontier)
            for (size_t p = 0; p < np; ++p)
                for (size_t s = 0; s < ps.partitions[p].size(); ++s) {
                    if (static_cast<int>(s) == o[p]) continue;
                    std::vector<int> o2 = o;
                    o2[p] = static_cast<int>(s);
                    if (!orientation_valid_at(o2, p)) continue;
                    if (id.emplace(o2, static_cast<int>(qc.orientations.size())).second) {
                        if (qc.orientations.size() >= bound)
                            throw resource_error("quasi-cubulation exceeds bound " + std::to_string(bound));
                        qc.orientations.push_back(o2);
                        next.push_back(std::move(o2));
                    }
                }
        frontier = std::move(next);
    }

    const int nv = static_cast<int>(qc.orientations.size());
    qc.graph.reset(nv);
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v) {
            size_t diff = 0;
            for (size_t p = 0; p < np; ++p) diff += qc.orientations[static_cast<size_t>(u)][p] !=
                                                    qc.orientations[static_cast<size_t>(v)][p];
            if (diff == 1) qc.graph.add_edge(u, v);
        }

    // Distance law: graph distance equals the number of differing partitions.
    auto dist = qc.graph.all_pairs_dist();
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v) {
            int diff = 0;
            for (size_t p = 0; p < np; ++p) diff += qc.orientations[static_cast<size_t>(u)][p] !=
                                                    qc.orientations[static_cast<size_t>(v)][p];
            if (dist[static_cast<size_t>(u)][static_cast<size_t>(v)] != diff)
                throw std::logic_error("quasi-cubulation distance law verification failed");
        }

    // Hyperplane-partition correspondence: each partition's flip edges form
    // exactly one hyperplane, every hyperplane arises once, and transversality
    // of partitions matches transversality of hyperplanes.
    HyperplaneStructure hs = compute_hyperplanes(qc.graph);
    std::vector<int> hyp_of_partition(np, -1);
    for (int u = 0; u < nv; ++u)
        for (int v : qc.graph.nbrs[static_cast<size_t>(u)]) {
            if (v < u) continue;
            size_t p = 0;
            while (qc.orientations[static_cast<size_t>(u)][p] ==
                   qc.orientations[static_cast<size_t>(v)][p])
                ++p;
            int h = hs.hyperplane_of_edge(u, v);
            if (hyp_of_partition[p] < 0) hyp_of_partition[p] = h;
            else if (hyp_of_partition[p] != h)
                throw std::logic_error("partition maps to two distinct hyperplanes");
        }
    std::set<int> used;
    for (size_t p = 0; p < np; ++p) {
        if (hyp_of_partition[p] < 0)
            throw std::logic_error("partition induces no hyperplane in the quasi-cubulation");
        if (!used.insert(hyp_of_partition[p]).second)
            throw std::logic_error("two partitions map to one hyperplane");
    }
    if (static_cast<int>(used.size()) != hs.num_hyp)
        throw std::logic_error("hyperplane not induced by any partition");
    for (size_t p = 0; p < np; ++p)
        for (size_t q = p + 1; q < np; ++q) {
            bool tp = detail::partitions_transverse(ps.partitions[p], ps.partitions[q]);
            bool th = hs.transverse[static_cast<size_t>(hyp_of_partition[p])]
                                   [static_cast<size_t>(hyp_of_partition[q])] != 0;
            if (tp != th)
                throw std::logic_error("partition/hyperplane transversality mismatch");
        }
    return qc;
}

struct QmClosure {
    FiniteGraph closure;
    std::vector<int> embedding;   // source vertex -> closure vertex
    HyperplaneStructure source_hs;
    HyperplaneStructure closure_hs;
};

/// Quasi-median closure: quasi-cubulate the partitions given by hyperplane
/// sectors.  Verifies the embedding is isometric, source cliques stay cliques,
/// every closure clique is parallel to an embedded one, and parallelism and
/// transversality are preserved and reflected.
inline QmClosure qm_closure(const FiniteGraph& g, size_t bound = 200000) {
    QmClosure out;
    out.source_hs = compute_hyperplanes(g);
    PartitionSpace ps;
    ps.ground = g.n;
    for (int h = 0; h < out.source_hs.num_hyp; ++h)
        ps.partitions.push_back(out.source_hs.sector_vertex_sets(h));
    QuasiCubulation qc = quasi_cubulate(ps, bound);
    out.closure = qc.graph;
    out.embedding = qc.principal;

    auto dg = g.all_pairs_dist();
    auto dm = out.closure.all_pairs_dist();
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            if (dg[static_cast<size_t>(x)][static_cast<size_t>(y)] !=
                dm[static_cast<size_t>(out.embedding[static_cast<size_t>(x)])]
                  [static_cast<size_t>(out.embedding[static_cast<size_t>(y)])])
                throw std::logic_error("closure embedding is not isometric");

    out.closure_hs = compute_hyperplanes(out.closure);

    // (i) images of source cliques are cliques of the closure, and
    // (iii) parallelism is preserved and reflected on them.
    std::vector<int> image_clique(out.source_hs.cg.cliques.size(), -1);
    for (size_t c = 0; c < out.source_hs.cg.cliques.size(); ++c) {
        std::vector<int> img;
        for (int v : out.source_hs.cg.cliques[c]) img.push_back(out.embedding[static_cast<size_t>(v)]);
        std::sort(img.begin(), img.end());
        for (size_t mc = 0; mc < out.closure_hs.cg.cliques.size(); ++mc)
            if (out.closure_hs.cg.cliques[mc] == img) { image_clique[c] = static_cast<int>(mc); break; }
        if (image_clique[c] < 0)
            throw std::logic_error("image of a source clique is not a clique of the closure");
    }
    for (size_t a = 0; a < image_clique.size(); ++a)
        for (size_t b = 0; b < image_clique.size(); ++b) {
            bool ps_par = detail::cliques_parallel(out.source_hs.cg, a, b);
            bool pm_par = detail::cliques_parallel(out.closure_hs.cg,
                                                   static_cast<size_t>(image_clique[a]),
                                                   static_cast<size_t>(image_clique[b]));
            if (ps_par != pm_par) throw std::logic_error("clique parallelism not preserved by closure");
        }

    // (ii) every closure clique is parallel to the image of some source clique.
    for (size_t mc = 0; mc < out.closure_hs.cg.cliques.size(); ++mc) {
        bool found = false;
        for (int ic : image_clique)
            if (detail::cliques_parallel(out.closure_hs.cg, mc, static_cast<size_t>(ic))) {
                found = true;
                break;
            }
        if (!found) throw std::logic_error("closure clique parallel to no source clique");
    }

    // (iv) hyperplane transversality preserved and reflected.
    std::vector<int> hyp_map(static_cast<size_t>(out.source_hs.num_hyp), -1);
    for (int h = 0; h < out.source_hs.num_hyp; ++h) {
        int c = out.source_hs.rep_clique(h);
        hyp_map[static_cast<size_t>(h)] =
            out.closure_hs.clique_class[static_cast<size_t>(image_clique[static_cast<size_t>(c)])];
    }
    for (int a = 0; a < out.source_hs.num_hyp; ++a)
        for (int b = a + 1; b < out.source_hs.num_hyp; ++b)
            if ((out.source_hs.transverse[static_cast<size_t>(a)][static_cast<size_t>(b)] != 0) !=
                (out.closure_hs.transverse[static_cast<size_t>(hyp_map[static_cast<size_t>(a)])]
                                          [static_cast<size_t>(hyp_map[static_cast<size_t>(b)])] != 0))
                throw std::logic_error("hyperplane transversality not preserved by closure");
    return out;
}

} // namespace peria

#endif
