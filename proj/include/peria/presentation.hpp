#ifndef PERIA_PRESENTATION_HPP
#define PERIA_PRESENTATION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peria/errors.hpp"

namespace peria {

enum class GroupKind { Cyclic, CyclicInfinite, FiniteTable, Opaque };

enum class TriBool { No, Yes, Unknown };

inline const char* to_string(TriBool t) {
    switch (t) {
        case TriBool::No: return "no";
        case TriBool::Yes: return "yes";
        default: return "unknown";
    }
}

/// Elements are encoded as int64 references: exponents for cyclic kinds
/// (reduced mod m for finite cyclic, identity = 0), table indices for
/// finite-table kinds (identity = index 0). Opaque groups have no elements.
using Elem = std::int64_t;

struct VertexGroupSpec {
    GroupKind kind = GroupKind::Cyclic;
    std::int64_t m = 2;                    // cyclic order or table size; 0 for cyclic-infinite
    std::vector<std::vector<int>> table;   // finite-table multiplication, row*col
    TriBool acylhyp = TriBool::Unknown;    // opaque kinds only
    std::vector<Elem> gens;                // the declared finite generating set S_G

    bool is_finite() const { return kind == GroupKind::Cyclic || kind == GroupKind::FiniteTable; }
    bool is_opaque() const { return kind == GroupKind::Opaque; }

    /// Group order; 0 means infinite.
    std::int64_t order() const {
        switch (kind) {
            case GroupKind::Cyclic: return m;
            case GroupKind::FiniteTable: return m;
            default: return 0;
        }
    }

    bool valid_elem(Elem a) const {
        switch (kind) {
            case GroupKind::Cyclic: return 0 <= a && a < m;
            case GroupKind::CyclicInfinite: return true;
            case GroupKind::FiniteTable: return 0 <= a && a < m;
            default: return false;
        }
    }

    Elem mul(Elem a, Elem b) const {
        switch (kind) {
            case GroupKind::Cyclic: return (a + b) % m;
            case GroupKind::CyclicInfinite: return a + b;
            case GroupKind::FiniteTable: return table[static_cast<size_t>(a)][static_cast<size_t>(b)];
            default: throw domain_error("opaque vertex group admits no element arithmetic");
        }
    }

    Elem inv(Elem a) const {
        switch (kind) {
            case GroupKind::Cyclic: return a == 0 ? 0 : m - a;
            case GroupKind::CyclicInfinite: return -a;
            case GroupKind::FiniteTable:
                for (std::int64_t b = 0; b < m; ++b)
                    if (table[static_cast<size_t>(a)][static_cast<size_t>(b)] == 0) return b;
                throw domain_error("table element without inverse");
            default: throw domain_error("opaque vertex group admits no element arithmetic");
        }
    }

    /// All nonidentity elements (finite kinds only).
    std::vector<Elem> nonidentity_elements() const {
        if (!is_finite()) throw domain_error("element enumeration requires a finite vertex group");
        std::vector<Elem> out;
        for (std::int64_t a = 1; a < m; ++a) out.push_back(a);
        return out;
    }

    std::vector<Elem> default_gens() const {
        switch (kind) {
            case GroupKind::Cyclic:
                // Symmetric by default so that S-metric balls look like the
                // undirected Cayley graph of the cyclic group.
                if (m > 2) return {1, m - 1};
                return {1};
            case GroupKind::CyclicInfinite: return {1, -1};
            case GroupKind::FiniteTable: {
                std::vector<Elem> out;
                for (std::int64_t a = 1; a < m; ++a) out.push_back(a);
                return out;
            }
            default: return {};
        }
    }

    /// Directed BFS word length of `a` over the declared gens.
    /// Throws if the gens fail to reach `a` (non-generating set).
    int gen_length(Elem a) const;
};

struct LabelledGraph {
    int n = 0;
    std::map<std::pair<int, int>, int> lambda;   // key (min,max) -> label >= 2

    static std::pair<int, int> key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

    bool adjacent(int u, int v) const { return u != v && lambda.count(key(u, v)) > 0; }

    /// Edge label, or 0 when u,v are non-adjacent.
    int label(int u, int v) const {
        auto it = lambda.find(key(u, v));
        return it == lambda.end() ? 0 : it->second;
    }

    std::vector<int> link(int u) const {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (adjacent(u, v)) out.push_back(v);
        return out;
    }
};

struct PeriagroupPresentation {
    LabelledGraph graph;
    std::vector<VertexGroupSpec> specs;
    std::vector<std::string> names;
    std::map<std::string, int> name_to_id;

    int n() const { return graph.n; }
    const VertexGroupSpec& spec(int u) const { return specs[static_cast<size_t>(u)]; }
    const std::string& name(int u) const { return names[static_cast<size_t>(u)]; }

    int vertex_id(const std::string& nm) const {
        auto it = name_to_id.find(nm);
        if (it == name_to_id.end()) throw domain_error("unknown vertex name: " + nm);
        return it->second;
    }

    bool all_edges_label2() const {
        for (auto& [e, lab] : graph.lambda)
            if (lab != 2) return false;
        return true;
    }

    bool all_groups_order2() const {
        for (auto& s : specs)
            if (s.order() != 2) return false;
        return true;
    }

    /// Induced sub-presentation on a vertex subset; keeps names.
    PeriagroupPresentation induced(const std::vector<int>& verts) const;
};

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
    }
};

// ---------------------------------------------------------------------------

inline int VertexGroupSpec::gen_length(Elem a) const {
    if (is_opaque()) throw domain_error("opaque vertex group has no word length");
    if (a == 0) return 0;
    if (gens.empty()) throw domain_error("vertex group has an empty generating set");
    // Plain BFS over right multiplication by declared generators.  For the
    // infinite cyclic group the state space is capped to keep bad generating
    // sets from looping forever.
    std::int64_t cap = 0;
    if (kind == GroupKind::CyclicInfinite) {
        std::int64_t maxg = 1;
        for (Elem g : gens) maxg = std::max<std::int64_t>(maxg, std::llabs(g));
        cap = std::llabs(a) + maxg * 2 + 4;
    }
    std::map<Elem, int> dist{{0, 0}};
    std::vector<Elem> frontier{0};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (Elem x : frontier) {
            for (Elem g : gens) {
                Elem y = mul(x, g);
                if (kind == GroupKind::CyclicInfinite && std::llabs(y) > cap) continue;
                if (dist.emplace(y, dist[x] + 1).second) {
                    if (y == a) return dist[y];
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    throw domain_error("S_G does not generate the vertex group (element unreachable)");
}

inline PeriagroupPresentation PeriagroupPresentation::induced(const std::vector<int>& verts) const {
    PeriagroupPresentation q;
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    q.graph.n = static_cast<int>(sorted.size());
    std::map<int, int> remap;
    for (size_t i = 0; i < sorted.size(); ++i) {
        int u = sorted[i];
        remap[u] = static_cast<int>(i);
        q.specs.push_back(specs[static_cast<size_t>(u)]);
        q.names.push_back(names[static_cast<size_t>(u)]);
        q.name_to_id[names[static_cast<size_t>(u)]] = static_cast<int>(i);
    }
    for (auto& [e, lab] : graph.lambda) {
        auto iu = remap.find(e.first), iv = remap.find(e.second);
        if (iu != remap.end() && iv != remap.end())
            q.graph.lambda[LabelledGraph::key(iu->second, iv->second)] = lab;
    }
    return q;
}

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

inline std::int64_t parse_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error(line, "expected an integer, got '" + s + "'");
    }
}

/// Table sanity: identity row/column, inverses, associativity (full check).
inline void check_table(const VertexGroupSpec& s, const std::string& vname) {
    std::int64_t k = s.m;
    for (std::int64_t a = 0; a < k; ++a) {
        if (s.table[static_cast<size_t>(a)][0] != a || s.table[0][static_cast<size_t>(a)] != a)
            throw domain_error("vertex " + vname + ": table index 0 is not an identity at element " +
                               std::to_string(a));
    }
    for (std::int64_t a = 0; a < k; ++a) {
        bool has_inv = false;
        for (std::int64_t b = 0; b < k && !has_inv; ++b)
            has_inv = s.table[static_cast<size_t>(a)][static_cast<size_t>(b)] == 0;
        if (!has_inv)
            throw domain_error("vertex " + vname + ": element " + std::to_string(a) + " has no inverse");
    }
    if (k <= 64) {
        for (std::int64_t a = 0; a < k; ++a)
            for (std::int64_t b = 0; b < k; ++b)
                for (std::int64_t c = 0; c < k; ++c) {
                    Elem ab_c = s.mul(s.mul(a, b), c);
                    Elem a_bc = s.mul(a, s.mul(b, c));
                    if (ab_c != a_bc)
                        throw domain_error("vertex " + vname + ": associativity fails at (" +
                                           std::to_string(a) + "," + std::to_string(b) + "," +
                                           std::to_string(c) + ")");
                }
    }
}

inline void check_gens_generate(const VertexGroupSpec& s, const std::string& vname) {
    if (s.is_opaque()) return;
    if (s.gens.empty()) throw domain_error("vertex " + vname + ": empty generating set");
    for (Elem g : s.gens) {
        if (g == 0) throw domain_error("vertex " + vname + ": identity listed as a generator");
        if (!s.valid_elem(g))
            throw domain_error("vertex " + vname + ": generator out of range: " + std::to_string(g));
    }
    if (s.kind == GroupKind::CyclicInfinite) {
        // Directed words over the gens must reach every integer: need both a
        // positive and a negative exponent, with overall gcd 1.
        std::int64_t g = 0;
        bool pos = false, neg = false;
        for (Elem e : s.gens) {
            g = std::gcd(g, std::llabs(e));
            pos = pos || e > 0;
            neg = neg || e < 0;
        }
        if (g != 1 || !pos || !neg)
            throw domain_error("vertex " + vname + ": S_G does not generate the infinite cyclic group");
        return;
    }
    // Finite kinds: directed closure must cover the group.
    std::set<Elem> seen{0};
    std::vector<Elem> frontier{0};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (Elem x : frontier)
            for (Elem e : s.gens) {
                Elem y = s.mul(x, e);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    if (static_cast<std::int64_t>(seen.size()) != s.order())
        throw domain_error("vertex " + vname + ": S_G does not generate the vertex group");
}

} // namespace detail

/// Parse the `.peria` line format:
///   vertex <name> cyclic <m|inf>
///   vertex <name> table <k> <k*k indices>
///   vertex <name> opaque acylhyp=<yes|no|unknown>
///   edge <u> <v> <label>
///   gen <vertex> <element>
inline PeriagroupPresentation parse_presentation(const std::string& text) {
    PeriagroupPresentation p;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::pair<int, int>> seen_edges;
    std::set<int> gen_cleared;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& cmd = toks[0];
        if (cmd == "vertex") {
            if (toks.size() < 3) throw parse_error(lineno, "vertex line needs a name and a kind");
            const std::string& nm = toks[1];
            if (p.name_to_id.count(nm)) throw parse_error(lineno, "duplicate vertex name: " + nm);
            VertexGroupSpec s;
            const std::string& kind = toks[2];
            if (kind == "cyclic") {
                if (toks.size() != 4) throw parse_error(lineno, "cyclic vertex needs an order or 'inf'");
                if (toks[3] == "inf") {
                    s.kind = GroupKind::CyclicInfinite;
                    s.m = 0;
                } else {
                    s.kind = GroupKind::Cyclic;
                    s.m = detail::parse_int(toks[3], lineno);
                    if (s.m < 2) throw parse_error(lineno, "cyclic order must be >= 2");
                }
            } else if (kind == "table") {
                if (toks.size() < 4) throw parse_error(lineno, "table vertex needs a size");
                s.kind = GroupKind::FiniteTable;
                s.m = detail::parse_int(toks[3], lineno);
                if (s.m < 1) throw parse_error(lineno, "table size must be >= 1");
                if (static_cast<std::int64_t>(toks.size()) != 4 + s.m * s.m)
                    throw parse_error(lineno, "table needs exactly k*k entries");
                s.table.assign(static_cast<size_t>(s.m), std::vector<int>(static_cast<size_t>(s.m)));
                for (std::int64_t i = 0; i < s.m * s.m; ++i) {
                    std::int64_t v = detail::parse_int(toks[static_cast<size_t>(4 + i)], lineno);
                    if (v < 0 || v >= s.m) throw parse_error(lineno, "table entry out of range");
                    s.table[static_cast<size_t>(i / s.m)][static_cast<size_t>(i % s.m)] =
                        static_cast<int>(v);
                }
            } else if (kind == "opaque") {
                s.kind = GroupKind::Opaque;
                s.m = 0;
                s.acylhyp = TriBool::Unknown;
                if (toks.size() == 4) {
                    if (toks[3] == "acylhyp=yes") s.acylhyp = TriBool::Yes;
                    else if (toks[3] == "acylhyp=no") s.acylhyp = TriBool::No;
                    else if (toks[3] == "acylhyp=unknown") s.acylhyp = TriBool::Unknown;
                    else throw parse_error(lineno, "opaque vertex option must be acylhyp=<yes|no|unknown>");
                } else if (toks.size() != 3) {
                    throw parse_error(lineno, "opaque vertex takes at most one option");
                }
            } else {
                throw parse_error(lineno, "unknown vertex kind: " + kind);
            }
            s.gens = s.default_gens();
            p.name_to_id[nm] = p.graph.n;
            p.names.push_back(nm);
            p.specs.push_back(std::move(s));
            ++p.graph.n;
        } else if (cmd == "edge") {
            if (toks.size() != 4) throw parse_error(lineno, "edge line needs two vertices and a label");
            auto iu = p.name_to_id.find(toks[1]);
            auto iv = p.name_to_id.find(toks[2]);
            if (iu == p.name_to_id.end()) throw parse_error(lineno, "unknown vertex: " + toks[1]);
            if (iv == p.name_to_id.end()) throw parse_error(lineno, "unknown vertex: " + toks[2]);
            int u = iu->second, v = iv->second;
            if (u == v) throw parse_error(lineno, "self-loop edge on " + toks[1]);
            std::int64_t lab = detail::parse_int(toks[3], lineno);
            if (lab < 2) throw parse_error(lineno, "edge label must be >= 2");
            auto key = LabelledGraph::key(u, v);
            if (!seen_edges.insert(key).second) throw parse_error(lineno, "repeated edge");
            p.graph.lambda[key] = static_cast<int>(lab);
        } else if (cmd == "gen") {
            if (toks.size() != 3) throw parse_error(lineno, "gen line needs a vertex and an element");
            auto iu = p.name_to_id.find(toks[1]);
            if (iu == p.name_to_id.end()) throw parse_error(lineno, "unknown vertex: " + toks[1]);
            int u = iu->second;
            VertexGroupSpec& s = p.specs[static_cast<size_t>(u)];
            if (s.is_opaque()) throw parse_error(lineno, "opaque vertex groups take no generators");
            Elem e = detail::parse_int(toks[2], lineno);
            if (!s.valid_elem(e) || e == 0) throw parse_error(lineno, "invalid generator element");
            // First explicit gen line for a vertex replaces the defaults.
            if (gen_cleared.insert(u).second) s.gens.clear();
            s.gens.push_back(e);
        } else {
            throw parse_error(lineno, "unknown directive: " + cmd);
        }
    }

    // Invariants.
    for (int u = 0; u < p.n(); ++u) {
        const VertexGroupSpec& s = p.spec(u);
        if (s.kind == GroupKind::FiniteTable) detail::check_table(s, p.name(u));
        detail::check_gens_generate(s, p.name(u));
    }
    for (auto& [e, lab] : p.graph.lambda) {
        if (lab > 2) {
            std::int64_t ou = p.spec(e.first).order();
            std::int64_t ov = p.spec(e.second).order();
            if (ou != 2 || ov != 2)
                throw domain_error("compatibility violation: edge {" + p.name(e.first) + "," +
                                   p.name(e.second) + "} has label " + std::to_string(lab) +
                                   " but a group of order != 2");
        }
    }
    return p;
}

/// Connected components of the opposite graph: edges are the vertex pairs NOT
/// joined by a label-2 edge.  Deterministic order by least member.
inline std::vector<std::vector<int>> star2_decomposition(const PeriagroupPresentation& p,
                                                         const std::vector<int>* subset = nullptr) {
    std::vector<int> verts;
    if (subset) {
        verts = *subset;
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    } else {
        verts.resize(static_cast<size_t>(p.n()));
        std::iota(verts.begin(), verts.end(), 0);
    }
    std::map<int, int> comp;
    for (int v : verts) comp[v] = -1;
    int nc = 0;
    for (int v : verts) {
        if (comp[v] != -1) continue;
        std::vector<int> stack{v};
        comp[v] = nc;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : verts) {
                if (comp[y] != -1) continue;
                bool label2 = p.graph.adjacent(x, y) && p.graph.label(x, y) == 2;
                if (!label2) {   // an opposite-graph edge
                    comp[y] = nc;
                    stack.push_back(y);
                }
            }
        }
        ++nc;
    }
    std::vector<std::vector<int>> factors(static_cast<size_t>(nc));
    for (int v : verts) factors[static_cast<size_t>(comp[v])].push_back(v);
    std::sort(factors.begin(), factors.end());
    return factors;
}

/// Canonical GP-Cox split: Psi = order-2 vertices incident to a label > 2
/// (maximal-GP convention), PsiC = the rest.  `force_cox` moves additional
/// order-2 vertices whose edges all carry label 2 into the Coxeter side.
struct GpCoxDecomposition {
    std::vector<int> psic;   // type GP
    std::vector<int> psi;    // type Cox
};

inline GpCoxDecomposition gp_cox_decomposition(const PeriagroupPresentation& p,
                                               const std::vector<int>& force_cox = {}) {
    GpCoxDecomposition d;
    std::set<int> forced(force_cox.begin(), force_cox.end());
    for (int u : forced) {
        if (p.spec(u).order() != 2)
            throw domain_error("--force-cox vertex " + p.name(u) + " does not have order 2");
    }
    for (int u = 0; u < p.n(); ++u) {
        bool big_label = false;
        for (int v : p.graph.link(u))
            if (p.graph.label(u, v) > 2) big_label = true;
        bool cox = (p.spec(u).order() == 2 && big_label) || forced.count(u) > 0;
        (cox ? d.psi : d.psic).push_back(u);
    }
    // Both defining conditions, rechecked verbatim.
    for (int u : d.psic)
        for (int v : p.graph.link(u))
            if (p.graph.label(u, v) != 2)
                throw domain_error("GP-Cox decomposition broken: GP vertex on a label > 2 edge");
    for (int u : d.psi)
        if (p.spec(u).order() != 2)
            throw domain_error("GP-Cox decomposition broken: Cox vertex of order != 2");
    return d;
}

inline ValidationReport validate_presentation(const PeriagroupPresentation& p) {
    ValidationReport r;
    auto add = [&r](const std::string& name, bool pass, const std::string& detail) {
        r.checks.push_back({name, pass, detail});
    };
    for (int u = 0; u < p.n(); ++u) {
        const VertexGroupSpec& s = p.spec(u);
        if (s.kind == GroupKind::FiniteTable) {
            try {
                detail::check_table(s, p.name(u));
                add("table-group-axioms:" + p.name(u), true, "");
            } catch (const domain_error& e) {
                add("table-group-axioms:" + p.name(u), false, e.what());
            }
        }
        if (!s.is_opaque()) {
            try {
                detail::check_gens_generate(s, p.name(u));
                add("gens-generate:" + p.name(u), true, "");
            } catch (const domain_error& e) {
                add("gens-generate:" + p.name(u), false, e.what());
            }
        }
    }
    bool compat = true;
    std::string compat_msg;
    for (auto& [e, lab] : p.graph.lambda) {
        if (lab > 2 && (p.spec(e.first).order() != 2 || p.spec(e.second).order() != 2)) {
            compat = false;
            compat_msg = "edge {" + p.name(e.first) + "," + p.name(e.second) + "} labelled " +
                         std::to_string(lab) + " needs both groups of order 2";
        }
    }
    add("lambda-compatibility", compat, compat_msg);
    return r;
}

} // namespace peria

#endif
