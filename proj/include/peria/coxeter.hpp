#ifndef PERIA_COXETER_HPP
#define PERIA_COXETER_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "peria/presentation.hpp"

namespace peria {

/// Edge label standing for m = infinity.
inline constexpr int kCoxInfinity = std::numeric_limits<int>::max();

struct CoxeterDiagram {
    int n = 0;
    std::map<std::pair<int, int>, int> labels;   // only m >= 3 (or infinity) stored

    static std::pair<int, int> key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

    int label(int u, int v) const {
        if (u == v) return 1;
        auto it = labels.find(key(u, v));
        return it == labels.end() ? 2 : it->second;
    }

    void set_label(int u, int v, int m) {
        if (u == v) throw domain_error("diagram self-loop");
        if (m == 2) { labels.erase(key(u, v)); return; }
        if (m < 3 && m != kCoxInfinity) throw domain_error("Coxeter label must be >= 2 or infinity");
        labels[key(u, v)] = m;
    }
};

/// Diagram text format: `coxeter <n>` then `m u v <label|inf>` lines.
inline CoxeterDiagram parse_coxeter(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    CoxeterDiagram d;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok[0] == '#') continue;
        if (!have_n) {
            std::string cnt;
            if (tok != "coxeter" || !(ss >> cnt)) throw parse_error(lineno, "expected 'coxeter <n>'");
            d.n = static_cast<int>(detail::parse_int(cnt, lineno));
            if (d.n <= 0) throw parse_error(lineno, "vertex count must be positive");
            have_n = true;
            continue;
        }
        if (tok != "m") throw parse_error(lineno, "expected an 'm u v label' line");
        std::string su, sv, sl;
        if (!(ss >> su >> sv >> sl)) throw parse_error(lineno, "m line needs two vertices and a label");
        int u = static_cast<int>(detail::parse_int(su, lineno));
        int v = static_cast<int>(detail::parse_int(sv, lineno));
        if (u < 0 || v < 0 || u >= d.n || v >= d.n || u == v)
            throw parse_error(lineno, "bad vertex pair");
        int m = sl == "inf" ? kCoxInfinity : static_cast<int>(detail::parse_int(sl, lineno));
        if (m < 2) throw parse_error(lineno, "label must be >= 2 or inf");
        d.set_label(u, v, m);
    }
    if (!have_n) throw domain_error("empty Coxeter diagram input");
    return d;
}

/// Adapter from an all-order-2 presentation: a missing periagroup edge means
/// m = infinity, a label-lambda edge means m = lambda.
inline CoxeterDiagram coxeter_diagram_of(const PeriagroupPresentation& p,
                                         const std::vector<int>& verts) {
    CoxeterDiagram d;
    d.n = static_cast<int>(verts.size());
    for (size_t i = 0; i < verts.size(); ++i)
        if (p.spec(verts[i]).order() != 2)
            throw domain_error("Coxeter adapter needs order-2 vertex groups (vertex " +
                               p.name(verts[i]) + ")");
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j) {
            int lab = p.graph.label(verts[i], verts[j]);
            d.set_label(static_cast<int>(i), static_cast<int>(j), lab == 0 ? kCoxInfinity : lab);
        }
    return d;
}

inline CoxeterDiagram coxeter_diagram_of(const PeriagroupPresentation& p) {
    std::vector<int> verts(static_cast<size_t>(p.n()));
    std::iota(verts.begin(), verts.end(), 0);
    return coxeter_diagram_of(p, verts);
}

/// Connected components of the m >= 3 graph, as sub-diagrams plus the
/// original vertex ids.
struct DiagramComponent {
    CoxeterDiagram diagram;
    std::vector<int> vertices;
};

inline std::vector<DiagramComponent> irreducible_components(const CoxeterDiagram& d) {
    std::vector<int> comp(static_cast<size_t>(d.n), -1);
    int nc = 0;
    for (int v = 0; v < d.n; ++v) {
        if (comp[static_cast<size_t>(v)] != -1) continue;
        std::vector<int> stack{v};
        comp[static_cast<size_t>(v)] = nc;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < d.n; ++y)
                if (comp[static_cast<size_t>(y)] == -1 && d.label(x, y) >= 3) {
                    comp[static_cast<size_t>(y)] = nc;
                    stack.push_back(y);
                }
        }
        ++nc;
    }
    std::vector<DiagramComponent> out(static_cast<size_t>(nc));
    for (int v = 0; v < d.n; ++v) out[static_cast<size_t>(comp[static_cast<size_t>(v)])].vertices.push_back(v);
    for (auto& c : out) {
        c.diagram.n = static_cast<int>(c.vertices.size());
        for (size_t i = 0; i < c.vertices.size(); ++i)
            for (size_t j = i + 1; j < c.vertices.size(); ++j)
                c.diagram.set_label(static_cast<int>(i), static_cast<int>(j),
                                    d.label(c.vertices[i], c.vertices[j]));
    }
    return out;
}

// ------------------------------------------------------- table classification

enum class CoxeterTag { Spherical, Affine, Other };

struct IrreducibleCoxeterType {
    CoxeterTag tag = CoxeterTag::Other;
    std::string family;              // e.g. "A3", "I2(7)", "~A2"
    bool infinite_dihedral = false;  // the 2-vertex m = infinity diagram
};

namespace detail {

inline CoxeterDiagram cox_path(const std::vector<int>& edge_labels) {
    CoxeterDiagram d;
    d.n = static_cast<int>(edge_labels.size()) + 1;
    for (size_t i = 0; i < edge_labels.size(); ++i)
        d.set_label(static_cast<int>(i), static_cast<int>(i) + 1, edge_labels[i]);
    return d;
}

/// Star-shaped simply laced diagram: arms of the given lengths joined at a
/// central vertex, all labels 3.
inline CoxeterDiagram cox_star(const std::vector<int>& arms) {
    CoxeterDiagram d;
    d.n = 1 + std::accumulate(arms.begin(), arms.end(), 0);
    int next = 1;
    for (int arm : arms) {
        int prev = 0;
        for (int k = 0; k < arm; ++k) {
            d.set_label(prev, next, 3);
            prev = next++;
        }
    }
    return d;
}

inline bool diagrams_isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b) {
    if (a.n != b.n) return false;
    // Label multisets must agree.
    std::multiset<int> la, lb;
    for (auto& [e, m] : a.labels) la.insert(m);
    for (auto& [e, m] : b.labels) lb.insert(m);
    if (la != lb) return false;
    // Per-vertex signatures: sorted incident labels (m >= 3).
    auto sig = [](const CoxeterDiagram& d, int v) {
        std::multiset<int> s;
        for (int u = 0; u < d.n; ++u)
            if (u != v && d.label(u, v) >= 3) s.insert(d.label(u, v));
        return s;
    };
    std::vector<std::multiset<int>> sa, sb;
    for (int v = 0; v < a.n; ++v) sa.push_back(sig(a, v));
    for (int v = 0; v < b.n; ++v) sb.push_back(sig(b, v));
    {
        auto ta = sa, tb = sb;
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        if (ta != tb) return false;
    }
    std::vector<int> map(static_cast<size_t>(a.n), -1), used(static_cast<size_t>(b.n), 0);
    std::function<bool(int)> place = [&](int v) {
        if (v == a.n) return true;
        for (int w = 0; w < b.n; ++w) {
            if (used[static_cast<size_t>(w)] || sa[static_cast<size_t>(v)] != sb[static_cast<size_t>(w)])
                continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                ok = a.label(u, v) == b.label(map[static_cast<size_t>(u)], w);
            if (!ok) continue;
            map[static_cast<size_t>(v)] = w;
            used[static_cast<size_t>(w)] = 1;
            if (place(v + 1)) return true;
            used[static_cast<size_t>(w)] = 0;
        }
        return false;
    };
    return place(0);
}

inline std::vector<std::pair<std::string, CoxeterDiagram>> spherical_family_diagrams(int n) {
    std::vector<std::pair<std::string, CoxeterDiagram>> out;
    auto nm = [](const std::string& f, int r) { return f + std::to_string(r); };
    if (n >= 1) out.push_back({nm("A", n), cox_path(std::vector<int>(static_cast<size_t>(n - 1), 3))});
    if (n >= 2) {
        auto labs = std::vector<int>(static_cast<size_t>(n - 1), 3);
        labs.back() = 4;
        out.push_back({nm("B", n), cox_path(labs)});
    }
    if (n >= 4) out.push_back({nm("D", n), cox_star({1, 1, n - 3})});
    if (n == 6) out.push_back({"E6", cox_star({1, 2, 2})});
    if (n == 7) out.push_back({"E7", cox_star({1, 2, 3})});
    if (n == 8) out.push_back({"E8", cox_star({1, 2, 4})});
    if (n == 4) out.push_back({"F4", cox_path({3, 4, 3})});
    if (n == 3) out.push_back({"H3", cox_path({5, 3})});
    if (n == 4) out.push_back({"H4", cox_path({5, 3, 3})});
    return out;
}

inline std::vector<std::pair<std::string, CoxeterDiagram>> affine_family_diagrams(int n) {
    // n = number of diagram vertices = affine rank + 1.
    std::vector<std::pair<std::string, CoxeterDiagram>> out;
    auto nm = [](const std::string& f, int r) { return "~" + f + std::to_string(r); };
    if (n == 2) {
        CoxeterDiagram d;
        d.n = 2;
        d.set_label(0, 1, kCoxInfinity);
        out.push_back({"~A1", d});
    }
    if (n >= 3) {   // cycle, all labels 3
        CoxeterDiagram d;
        d.n = n;
        for (int i = 0; i < n; ++i) d.set_label(i, (i + 1) % n, 3);
        out.push_back({nm("A", n - 1), d});
    }
    if (n >= 4) {   // fork at one end, 4 at the other
        CoxeterDiagram d = cox_star({1, 1, n - 3});
        // cox_star({1,1,k}) has its long arm ending at vertex n-1; relabel the
        // last edge of that arm to 4.
        d.set_label(n == 4 ? 0 : n - 2, n - 1, 4);
        out.push_back({nm("B", n - 1), d});
    }
    if (n >= 3) {   // path with 4 at both ends
        std::vector<int> labs(static_cast<size_t>(n - 1), 3);
        labs.front() = 4;
        labs.back() = 4;
        out.push_back({nm("C", n - 1), cox_path(labs)});
    }
    if (n >= 5) {   // forks at both ends
        CoxeterDiagram d;
        d.n = n;
        int chain = n - 4;   // internal chain vertices 4 .. 4+chain-1
        for (int i = 0; i < chain - 1; ++i) d.set_label(4 + i, 5 + i, 3);
        d.set_label(0, 4, 3);
        d.set_label(1, 4, 3);
        d.set_label(2, 4 + chain - 1, 3);
        d.set_label(3, 4 + chain - 1, 3);
        out.push_back({nm("D", n - 1), d});
    }
    if (n == 7) out.push_back({"~E6", cox_star({2, 2, 2})});
    if (n == 8) out.push_back({"~E7", cox_star({1, 3, 3})});
    if (n == 9) out.push_back({"~E8", cox_star({1, 2, 5})});
    if (n == 5) out.push_back({"~F4", cox_path({3, 3, 4, 3})});
    if (n == 3) out.push_back({"~G2", cox_path({6, 3})});
    return out;
}

} // namespace detail

inline IrreducibleCoxeterType classify_irreducible(const CoxeterDiagram& d) {
    IrreducibleCoxeterType t;
    if (d.n == 2 && d.label(0, 1) == kCoxInfinity) {
        t.tag = CoxeterTag::Affine;
        t.family = "~A1";
        t.infinite_dihedral = true;
        return t;
    }
    if (d.n == 2 && d.label(0, 1) >= 5 && d.label(0, 1) != 6) {
        t.tag = CoxeterTag::Spherical;
        t.family = "I2(" + std::to_string(d.label(0, 1)) + ")";
        return t;
    }
    if (d.n == 2 && d.label(0, 1) == 6) {
        t.tag = CoxeterTag::Spherical;
        t.family = "G2";
        return t;
    }
    for (auto& [name, fam] : detail::spherical_family_diagrams(d.n))
        if (detail::diagrams_isomorphic(d, fam)) {
            t.tag = CoxeterTag::Spherical;
            t.family = name;
            return t;
        }
    for (auto& [name, fam] : detail::affine_family_diagrams(d.n))
        if (detail::diagrams_isomorphic(d, fam)) {
            t.tag = CoxeterTag::Affine;
            t.family = name;
            return t;
        }
    return t;   // Other
}

// ----------------------------------------------------------- Gram signature

enum class GramSignature { PositiveDefinite, SemidefiniteCorank1, Indefinite };

inline const char* to_string(GramSignature s) {
    switch (s) {
        case GramSignature::PositiveDefinite: return "positive-definite";
        case GramSignature::SemidefiniteCorank1: return "semidefinite-corank-1";
        default: return "indefinite";
    }
}

namespace detail {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of Q(sqrt2, sqrt3, sqrt5): coefficients over the basis
/// sqrt(2^b0 * 3^b1 * 5^b2), indexed by the bit pattern b.
struct QF {
    std::array<Rational, 8> c{};

    static QF rational(const Rational& r) {
        QF x;
        x.c[0] = r;
        return x;
    }
    static QF radical(int idx, const Rational& coeff) {   // coeff * sqrt(radicand of idx)
        QF x;
        x.c[static_cast<size_t>(idx)] = coeff;
        return x;
    }
    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r == 0; });
    }
    QF operator+(const QF& o) const {
        QF r;
        for (size_t i = 0; i < 8; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    QF operator-(const QF& o) const {
        QF r;
        for (size_t i = 0; i < 8; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    QF operator*(const QF& o) const {
        QF r;
        static const int primes[3] = {2, 3, 5};
        for (size_t i = 0; i < 8; ++i) {
            if (c[i] == 0) continue;
            for (size_t j = 0; j < 8; ++j) {
                if (o.c[j] == 0) continue;
                size_t k = i ^ j;
                Rational f = c[i] * o.c[j];
                for (int b = 0; b < 3; ++b)
                    if (i >> b & j >> b & 1) f *= primes[b];
                r.c[k] += f;
            }
        }
        return r;
    }
};

inline constexpr int kRadicands[8] = {1, 2, 3, 6, 5, 10, 15, 30};

/// Inverse via the 8x8 rational linear system for multiplication by x, with
/// shortcut formulas for the one- and two-term elements that dominate in
/// practice.
inline QF qf_inverse(const QF& x) {
    if (x.is_zero()) throw domain_error("division by zero in field arithmetic");
    std::vector<size_t> sup;
    for (size_t i = 0; i < 8; ++i)
        if (x.c[i] != 0) sup.push_back(i);
    if (sup.size() == 1) {
        size_t i = sup[0];
        QF r;
        r.c[i] = 1 / (x.c[i] * kRadicands[i]);
        return r;
    }
    if (sup.size() == 2 && sup[0] == 0) {
        // (a + b sqrt(r))^-1 = (a - b sqrt(r)) / (a^2 - b^2 r)
        size_t i = sup[1];
        Rational den = x.c[0] * x.c[0] - x.c[i] * x.c[i] * kRadicands[i];
        if (den != 0) {
            QF r;
            r.c[0] = x.c[0] / den;
            r.c[i] = -x.c[i] / den;
            return r;
        }
    }
    // Columns: x * basis_j expressed over the basis.
    Rational M[8][9];
    for (size_t j = 0; j < 8; ++j) {
        QF bj;
        bj.c[j] = 1;
        QF col = x * bj;
        for (size_t i = 0; i < 8; ++i) M[i][j] = col.c[i];
    }
    for (size_t i = 0; i < 8; ++i) M[i][8] = i == 0 ? 1 : 0;
    for (size_t col = 0; col < 8; ++col) {
        size_t piv = col;
        while (piv < 8 && M[piv][col] == 0) ++piv;
        if (piv == 8) throw domain_error("singular multiplication matrix");
        for (size_t k = 0; k < 9; ++k) std::swap(M[piv][k], M[col][k]);
        Rational p = M[col][col];
        for (size_t k = 0; k < 9; ++k) M[col][k] /= p;
        for (size_t r = 0; r < 8; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col];
            for (size_t k = 0; k < 9; ++k) M[r][k] -= f * M[col][k];
        }
    }
    QF inv;
    for (size_t i = 0; i < 8; ++i) inv.c[i] = M[i][8];
    return inv;
}

/// Rational enclosure of sqrt(k) with denominator 10^digits (memoized).
inline std::pair<Rational, Rational> sqrt_enclosure(int k, unsigned digits) {
    static std::map<std::pair<int, unsigned>, std::pair<Rational, Rational>> cache;
    auto it = cache.find({k, digits});
    if (it != cache.end()) return it->second;
    BigInt den = 1;
    for (unsigned i = 0; i < digits; ++i) den *= 10;
    BigInt lo = boost::multiprecision::sqrt(BigInt(k) * den * den);
    auto enc = std::make_pair(Rational(lo, den), Rational(lo + 1, den));
    cache[{k, digits}] = enc;
    return enc;
}

/// Certified sign of a field element: -1, 0, +1.
inline int qf_sign(const QF& x) {
    if (x.is_zero()) return 0;
    for (unsigned digits = 8; digits <= 512; digits *= 2) {
        Rational lo = 0, hi = 0;
        for (size_t i = 0; i < 8; ++i) {
            if (x.c[i] == 0) continue;
            auto [slo, shi] = sqrt_enclosure(kRadicands[i], digits);
            if (x.c[i] > 0) {
                lo += x.c[i] * slo;
                hi += x.c[i] * shi;
            } else {
                lo += x.c[i] * shi;
                hi += x.c[i] * slo;
            }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    throw resource_error("precision exhausted certifying a Gram pivot sign");
}

/// -cos(pi/m) as an exact field element; requires m in {2,3,4,5,6,inf}.
inline QF neg_cos_pi_over(int m) {
    switch (m) {
        case 2: return QF::rational(0);
        case 3: return QF::rational(Rational(-1, 2));
        case 4: return QF::radical(1, Rational(-1, 2));            // -sqrt2/2
        case 5: {                                                  // -(1+sqrt5)/4
            QF x = QF::rational(Rational(-1, 4));
            x.c[4] = Rational(-1, 4);   // index 4 = bit pattern 100 = sqrt5
            return x;
        }
        case 6: return QF::radical(2, Rational(-1, 2));            // -sqrt3/2
        case kCoxInfinity: return QF::rational(-1);
        default: throw domain_error("label outside the exact field");
    }
}

inline bool label_exact(int m) {
    return m == 2 || m == 3 || m == 4 || m == 5 || m == 6 || m == kCoxInfinity;
}

/// Symmetric congruence elimination over the field; returns (pos, neg, zero).
inline std::tuple<int, int, int> qf_inertia(std::vector<std::vector<QF>> B) {
    size_t n = B.size();
    std::vector<char> done(n, 0);
    int pos = 0, neg = 0, zero = 0;
    for (;;) {
        // Prefer a nonzero diagonal pivot.
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && !B[i][i].is_zero()) { p = i; break; }
        if (p == n) {
            // No diagonal pivot: look for a nonzero off-diagonal entry and
            // symmetrically add one row/column into the other to expose one.
            size_t a = n, b = n;
            for (size_t i = 0; i < n && a == n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && !B[i][j].is_zero()) { a = i; b = j; break; }
            if (a == n) break;   // remaining block is zero
            for (size_t k = 0; k < n; ++k) B[a][k] = B[a][k] + B[b][k];
            for (size_t k = 0; k < n; ++k) B[k][a] = B[k][a] + B[k][b];
            continue;
        }
        int s = qf_sign(B[p][p]);
        (s > 0 ? pos : neg)++;
        QF inv = qf_inverse(B[p][p]);
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || i == p || B[i][p].is_zero()) continue;
            QF f = B[i][p] * inv;
            for (size_t j = 0; j < n; ++j)
                if (!done[j] && j != p) B[i][j] = B[i][j] - f * B[p][j];
        }
        for (size_t k = 0; k < n; ++k) {
            B[p][k] = QF{};
            B[k][p] = QF{};
        }
        done[p] = 1;
    }
    for (size_t i = 0; i < n; ++i)
        if (!done[i]) ++zero;
    return {pos, neg, zero};
}

/// Interval fallback for labels outside the exact field.
struct RatInterval {
    Rational lo, hi;
    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const {
        Rational cands[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
        return {*std::min_element(cands, cands + 4), *std::max_element(cands, cands + 4)};
    }
    RatInterval operator/(const RatInterval& o) const {
        if (o.lo <= 0 && o.hi >= 0) throw resource_error("interval division straddles zero");
        Rational cands[4] = {lo / o.lo, lo / o.hi, hi / o.lo, hi / o.hi};
        return {*std::min_element(cands, cands + 4), *std::max_element(cands, cands + 4)};
    }
    int sign() const { return lo > 0 ? 1 : hi < 0 ? -1 : 0; }
};

/// Enclosure of cos(pi/m) by bisecting on the sign of the Taylor-bounded
/// cosine: we enclose cos at rational points via the alternating series.
inline RatInterval cos_enclosure(int m, unsigned digits) {
    // pi enclosure from a fixed high-precision decimal expansion.
    static const char* kPi =
        "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214";
    std::string pis(kPi);
    unsigned keep = std::min<unsigned>(digits + 2, static_cast<unsigned>(pis.size() - 2));
    std::string digits_only = "3" + pis.substr(2, keep);
    BigInt num(digits_only);
    BigInt den = 1;
    for (unsigned i = 0; i < keep; ++i) den *= 10;
    RatInterval pi{Rational(num, den), Rational(num + 1, den)};
    RatInterval x = pi * RatInterval{Rational(1, m), Rational(1, m)};
    // cos(x) by the alternating Taylor series; |x| <= pi/2 < 2 so terms decay.
    RatInterval sum{0, 0};
    RatInterval term{1, 1};
    RatInterval x2 = x * x;
    for (int k = 1; k <= 40; ++k) {
        sum = sum + term;
        term = term * x2;
        term = RatInterval{-term.hi, -term.lo} / RatInterval{Rational(2 * k - 1) * (2 * k), Rational(2 * k - 1) * (2 * k)};
    }
    // The truncation error is bounded by the magnitude of the next term.
    Rational err = term.hi > -term.lo ? term.hi : -term.lo;
    if (err < 0) err = -err;
    return {sum.lo - err, sum.hi + err};
}

inline std::tuple<int, int, int> interval_inertia(const CoxeterDiagram& d, unsigned digits) {
    size_t n = static_cast<size_t>(d.n);
    std::vector<std::vector<RatInterval>> B(n, std::vector<RatInterval>(n, {0, 0}));
    for (size_t i = 0; i < n; ++i) B[i][i] = {1, 1};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            int m = d.label(static_cast<int>(i), static_cast<int>(j));
            RatInterval c = m == kCoxInfinity ? RatInterval{1, 1} : cos_enclosure(m, digits);
            B[i][j] = B[j][i] = RatInterval{-c.hi, -c.lo};
        }
    std::vector<char> done(n, 0);
    int pos = 0, neg = 0, zero = 0;
    for (;;) {
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && B[i][i].sign() != 0) { p = i; break; }
        if (p == n) {
            // Any undecided nonzero entry means we cannot certify at this precision.
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && !(B[i][j].lo == 0 && B[i][j].hi == 0) &&
                        B[i][j].sign() == 0)
                        throw resource_error("interval precision insufficient");
            size_t a = n, b = n;
            for (size_t i = 0; i < n && a == n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && B[i][j].sign() != 0) { a = i; b = j; break; }
            if (a == n) break;
            for (size_t k = 0; k < n; ++k) B[a][k] = B[a][k] + B[b][k];
            for (size_t k = 0; k < n; ++k) B[k][a] = B[k][a] + B[k][b];
            continue;
        }
        (B[p][p].sign() > 0 ? pos : neg)++;
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || i == p) continue;
            RatInterval f = B[i][p] / B[p][p];
            for (size_t j = 0; j < n; ++j)
                if (!done[j] && j != p) B[i][j] = B[i][j] - f * B[p][j];
        }
        for (size_t k = 0; k < n; ++k) B[p][k] = B[k][p] = {0, 0};
        done[p] = 1;
    }
    for (size_t i = 0; i < n; ++i)
        if (!done[i]) ++zero;
    return {pos, neg, zero};
}

} // namespace detail

inline GramSignature gram_signature(const CoxeterDiagram& d) {
    bool exact = true;
    for (auto& [e, m] : d.labels) exact = exact && detail::label_exact(m);
    int pos, neg, zero;
    if (exact) {
        size_t n = static_cast<size_t>(d.n);
        std::vector<std::vector<detail::QF>> B(n, std::vector<detail::QF>(n));
        for (size_t i = 0; i < n; ++i) B[i][i] = detail::QF::rational(1);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                B[i][j] = B[j][i] =
                    detail::neg_cos_pi_over(d.label(static_cast<int>(i), static_cast<int>(j)));
        std::tie(pos, neg, zero) = detail::qf_inertia(std::move(B));
    } else {
        unsigned digits = 20;
        for (;;) {
            try {
                std::tie(pos, neg, zero) = detail::interval_inertia(d, digits);
                break;
            } catch (const resource_error&) {
                if (digits >= 100) throw;
                digits *= 2;
            }
        }
    }
    if (neg > 0) return GramSignature::Indefinite;
    if (zero == 0) return GramSignature::PositiveDefinite;
    if (zero == 1) return GramSignature::SemidefiniteCorank1;
    throw domain_error("semidefinite Gram form of corank > 1 (diagram not irreducible?)");
}

} // namespace peria

#endif
