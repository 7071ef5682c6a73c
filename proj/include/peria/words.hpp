#ifndef PERIA_WORDS_HPP
#define PERIA_WORDS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "peria/presentation.hpp"

namespace peria {

struct Syllable {
    int vertex;
    Elem elem;
    auto operator<=>(const Syllable&) const = default;
};

using Word = std::vector<Syllable>;

struct CanonicalForm {
    Word word;
    auto operator<=>(const CanonicalForm&) const = default;
    bool is_identity() const { return word.empty(); }
    size_t syllable_count() const { return word.size(); }
};

/// Default guard on the size of a dihedral move-class closure.
inline constexpr size_t kDefaultClosureBound = 1000000;

namespace detail {

inline void check_word(const PeriagroupPresentation& p, const Word& w) {
    for (const Syllable& s : w) {
        if (s.vertex < 0 || s.vertex >= p.n()) throw domain_error("syllable vertex out of range");
        const VertexGroupSpec& g = p.spec(s.vertex);
        if (g.is_opaque()) throw domain_error("syllable on opaque vertex " + p.name(s.vertex));
        if (!g.valid_elem(s.elem)) throw domain_error("syllable element out of range");
    }
}

/// Drop identity syllables and fuse adjacent same-vertex syllables, repeatedly.
inline Word normalize(const PeriagroupPresentation& p, Word w) {
    Word out;
    for (const Syllable& s : w) {
        if (s.elem == 0) continue;
        if (!out.empty() && out.back().vertex == s.vertex) {
            Elem fused = p.spec(s.vertex).mul(out.back().elem, s.elem);
            out.pop_back();
            if (fused != 0) {
                out.push_back({s.vertex, fused});
            } else {
                // Cancellation may expose a new same-vertex pair; the outer
                // loop structure handles it because we keep appending onto
                // the already-normalized prefix.
                continue;
            }
        } else {
            out.push_back(s);
        }
    }
    // A fusion may have created a fresh adjacency (a b a with b cancelling);
    // iterate until stable.
    if (out.size() != w.size()) {
        for (size_t i = 0; i + 1 < out.size(); ++i)
            if (out[i].vertex == out[i + 1].vertex) return normalize(p, out);
    }
    return out;
}

/// All words reachable from w by single dihedral moves (length preserving).
inline std::vector<Word> dihedral_neighbours(const PeriagroupPresentation& p, const Word& w) {
    std::vector<Word> out;
    const size_t n = w.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        int u = w[i].vertex, v = w[i + 1].vertex;
        if (u == v) continue;
        int lam = p.graph.label(u, v);
        if (lam == 0) continue;
        if (lam == 2) {
            Word x = w;
            std::swap(x[i], x[i + 1]);
            out.push_back(std::move(x));
            continue;
        }
        // lambda > 2: both groups have order 2, so the window must strictly
        // alternate u,v for lambda syllables; <a,b>^lam becomes <b,a>^lam.
        if (i + static_cast<size_t>(lam) > n) continue;
        bool alternating = true;
        for (int k = 0; k < lam && alternating; ++k)
            alternating = w[i + static_cast<size_t>(k)].vertex == (k % 2 == 0 ? u : v);
        if (!alternating) continue;
        Word x = w;
        for (int k = 0; k < lam; ++k)
            x[i + static_cast<size_t>(k)].vertex = (k % 2 == 0 ? v : u);
        out.push_back(std::move(x));
    }
    return out;
}

/// Closure of a normalized word under dihedral moves.  Every member is kept
/// normalized; if a move ever makes two same-vertex syllables adjacent, the
/// exploration stops and the shorter word is handed back via `shortened`.
inline std::set<Word> move_closure(const PeriagroupPresentation& p, const Word& start,
                                   size_t bound, Word* shortened, bool* did_shorten) {
    if (did_shorten) *did_shorten = false;
    std::set<Word> seen{start};
    std::vector<Word> frontier{start};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (Word& x : dihedral_neighbours(p, w)) {
                Word nx = normalize(p, x);
                if (nx.size() < x.size()) {
                    if (shortened) *shortened = nx;
                    if (did_shorten) *did_shorten = true;
                    return seen;
                }
                if (seen.insert(nx).second) {
                    if (seen.size() > bound)
                        throw resource_error("move-class size exceeds bound " + std::to_string(bound));
                    next.push_back(std::move(nx));
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

} // namespace detail

/// Exhaustively shorten by reduction, fusion, and dihedral moves.  The result
/// has minimal syllable count for the element it spells.
inline Word graphically_reduce(const PeriagroupPresentation& p, Word w,
                               size_t bound = kDefaultClosureBound) {
    detail::check_word(p, w);
    w = detail::normalize(p, std::move(w));
    for (;;) {
        Word shorter;
        bool got = false;
        detail::move_closure(p, w, bound, &shorter, &got);
        if (!got) return w;
        w = detail::normalize(p, std::move(shorter));
    }
}

/// Lexicographically least member of the move class of the reduced word.
inline CanonicalForm canonical_form(const PeriagroupPresentation& p, Word w,
                                    size_t bound = kDefaultClosureBound) {
    w = graphically_reduce(p, std::move(w), bound);
    auto cls = detail::move_closure(p, w, bound, nullptr, nullptr);
    return CanonicalForm{*cls.begin()};
}

inline CanonicalForm multiply(const PeriagroupPresentation& p, const Word& u, const Word& v,
                              size_t bound = kDefaultClosureBound) {
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    return canonical_form(p, std::move(w), bound);
}

inline Word invert_word(const PeriagroupPresentation& p, const Word& u) {
    Word w;
    for (auto it = u.rbegin(); it != u.rend(); ++it)
        w.push_back({it->vertex, p.spec(it->vertex).inv(it->elem)});
    return w;
}

inline CanonicalForm invert(const PeriagroupPresentation& p, const Word& u,
                            size_t bound = kDefaultClosureBound) {
    return canonical_form(p, invert_word(p, u), bound);
}

/// Word length over the union of the declared S_G: per-syllable BFS lengths
/// summed along the reduced form.
inline int word_length_S(const PeriagroupPresentation& p, const Word& w,
                         size_t bound = kDefaultClosureBound) {
    Word r = graphically_reduce(p, w, bound);
    int total = 0;
    for (const Syllable& s : r) total += p.spec(s.vertex).gen_length(s.elem);
    return total;
}

/// Cyclically reduce: conjugate and apply moves until no cyclic permutation
/// shortens the word.  Returns the reduced conjugate and its vertex support.
inline std::pair<CanonicalForm, std::set<int>> cyclic_reduce_and_support(
    const PeriagroupPresentation& p, Word w, size_t bound = kDefaultClosureBound) {
    w = graphically_reduce(p, std::move(w), bound);
    for (;;) {
        // Explore the closure under dihedral moves and one-step cyclic
        // permutation; stop as soon as anything shortens.
        std::set<Word> seen{w};
        std::vector<Word> frontier{w};
        bool shortened = false;
        while (!frontier.empty() && !shortened) {
            std::vector<Word> next;
            for (const Word& x : frontier) {
                std::vector<Word> cands = detail::dihedral_neighbours(p, x);
                if (x.size() >= 2) {
                    Word rot(x.begin() + 1, x.end());
                    rot.push_back(x.front());
                    cands.push_back(std::move(rot));
                }
                for (Word& c : cands) {
                    Word nc = detail::normalize(p, c);
                    if (nc.size() < x.size()) {
                        w = graphically_reduce(p, std::move(nc), bound);
                        shortened = true;
                        break;
                    }
                    if (seen.insert(nc).second) {
                        if (seen.size() > bound)
                            throw resource_error("cyclic closure exceeds bound " + std::to_string(bound));
                        next.push_back(std::move(nc));
                    }
                }
                if (shortened) break;
            }
            frontier = std::move(next);
        }
        if (!shortened) break;
    }
    CanonicalForm c = canonical_form(p, w, bound);
    std::set<int> support;
    for (const Syllable& s : c.word) support.insert(s.vertex);
    return {c, support};
}

/// Render a word in the CLI syntax: `vertex[^exp]` / `vertex:idx`.
inline std::string format_word(const PeriagroupPresentation& p, const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const Syllable& s : w) {
        if (!out.empty()) out += ' ';
        out += p.name(s.vertex);
        const VertexGroupSpec& g = p.spec(s.vertex);
        if (g.kind == GroupKind::FiniteTable) {
            out += ':' + std::to_string(s.elem);
        } else if (s.elem != 1) {
            out += '^' + std::to_string(s.elem);
        }
    }
    return out;
}

/// Parse the CLI word syntax.  "1" denotes the empty word.
inline Word parse_word(const PeriagroupPresentation& p, const std::string& text) {
    Word w;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        if (tok == "1") continue;
        std::string nm = tok;
        Elem e = 1;
        bool table_ref = false;
        if (auto pos = tok.find('^'); pos != std::string::npos) {
            nm = tok.substr(0, pos);
            e = detail::parse_int(tok.substr(pos + 1), 0);
        } else if (auto cpos = tok.find(':'); cpos != std::string::npos) {
            nm = tok.substr(0, cpos);
            e = detail::parse_int(tok.substr(cpos + 1), 0);
            table_ref = true;
        }
        int u = p.vertex_id(nm);
        const VertexGroupSpec& g = p.spec(u);
        if (g.is_opaque()) throw domain_error("word uses opaque vertex " + nm);
        if (g.kind == GroupKind::FiniteTable && !table_ref && e == 1)
            throw domain_error("table-kind syllables use the vertex:idx syntax");
        if (g.kind == GroupKind::Cyclic) e = ((e % g.m) + g.m) % g.m;
        if (!g.valid_elem(e)) throw domain_error("element out of range in syllable " + tok);
        if (e != 0) w.push_back({u, e});
    }
    return w;
}

} // namespace peria

#endif
