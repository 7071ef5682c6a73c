#ifndef PERIA_GRAPH_HPP
#define PERIA_GRAPH_HPP

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "peria/errors.hpp"

namespace peria {

struct FiniteGraph {
    int n = 0;
    std::vector<std::vector<char>> adj;    // symmetric matrix
    std::vector<std::vector<int>> nbrs;    // sorted adjacency lists

    FiniteGraph() = default;
    explicit FiniteGraph(int n_) { reset(n_); }

    void reset(int n_) {
        n = n_;
        adj.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
        nbrs.assign(static_cast<size_t>(n), {});
    }

    bool adjacent(int u, int v) const { return adj[static_cast<size_t>(u)][static_cast<size_t>(v)] != 0; }

    void add_edge(int u, int v) {
        if (u == v) throw domain_error("self-loop edge");
        if (adjacent(u, v)) return;
        adj[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
        adj[static_cast<size_t>(v)][static_cast<size_t>(u)] = 1;
        nbrs[static_cast<size_t>(u)].insert(
            std::lower_bound(nbrs[static_cast<size_t>(u)].begin(), nbrs[static_cast<size_t>(u)].end(), v), v);
        nbrs[static_cast<size_t>(v)].insert(
            std::lower_bound(nbrs[static_cast<size_t>(v)].begin(), nbrs[static_cast<size_t>(v)].end(), u), u);
    }

    size_t edge_count() const {
        size_t m = 0;
        for (const auto& l : nbrs) m += l.size();
        return m / 2;
    }

    std::vector<int> bfs_dist(int src) const {
        std::vector<int> d(static_cast<size_t>(n), -1);
        std::queue<int> q;
        d[static_cast<size_t>(src)] = 0;
        q.push(src);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : nbrs[static_cast<size_t>(x)])
                if (d[static_cast<size_t>(y)] < 0) {
                    d[static_cast<size_t>(y)] = d[static_cast<size_t>(x)] + 1;
                    q.push(y);
                }
        }
        return d;
    }

    std::vector<std::vector<int>> all_pairs_dist() const {
        std::vector<std::vector<int>> d;
        d.reserve(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) d.push_back(bfs_dist(v));
        return d;
    }

    bool connected() const {
        if (n == 0) return true;
        auto d = bfs_dist(0);
        return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
    }

    int diameter(const std::vector<std::vector<int>>& dist) const {
        int dm = 0;
        for (const auto& row : dist)
            for (int v : row) dm = std::max(dm, v);
        return dm;
    }
};

/// `.graph` format: first non-comment line `n`, then `u v` edge lines.
inline FiniteGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    FiniteGraph g;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#') continue;
        if (!have_n) {
            try {
                g.reset(std::stoi(first));
            } catch (const std::exception&) {
                throw parse_error(lineno, "expected vertex count");
            }
            have_n = true;
            continue;
        }
        std::string second;
        if (!(ss >> second)) throw parse_error(lineno, "edge line needs two vertex ids");
        int u, v;
        try {
            u = std::stoi(first);
            v = std::stoi(second);
        } catch (const std::exception&) {
            throw parse_error(lineno, "edge ids must be integers");
        }
        if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw parse_error(lineno, "vertex id out of range");
        if (u == v) throw parse_error(lineno, "self-loop");
        g.add_edge(u, v);
    }
    if (!have_n) throw domain_error("empty .graph input");
    return g;
}

inline std::string format_graph(const FiniteGraph& g) {
    std::ostringstream out;
    out << g.n << '\n';
    for (int u = 0; u < g.n; ++u)
        for (int v : g.nbrs[static_cast<size_t>(u)])
            if (u < v) out << u << ' ' << v << '\n';
    return out.str();
}

} // namespace peria

#endif
