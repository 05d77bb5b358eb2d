#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "monopart/bitset.hpp"
#include "monopart/errors.hpp"

namespace monopart {

// Simple undirected graph, adjacency kept as one bitset row per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {
        if (n < 0) throw precondition_error("Graph: negative vertex count");
        adj_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw precondition_error("Graph::add_edge: self loop");
        if (adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v))) return;
        adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
        ++m_;
    }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    const Bitset& row(int v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return static_cast<int>(row(v).count()); }

    int degree_in(int v, const Bitset& mask) const {
        return static_cast<int>(Bitset::count_and(row(v), mask));
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (std::size_t v = row(u).find_next(static_cast<std::size_t>(u)); v != Bitset::npos;
                 v = row(u).find_next(v))
                out.emplace_back(u, static_cast<int>(v));
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

    // ---- builders ----

    static Graph edgeless(int n) { return Graph(n); }

    static Graph path(int n) {
        Graph g(n);
        for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
        return g;
    }

    // single vertices and single edges count as (degenerate) cycles
    static Graph cycle(int n) {
        Graph g(n);
        if (n <= 1) return g;
        if (n == 2) { g.add_edge(0, 1); return g; }
        for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
        return g;
    }

    // k-th power of a cycle: i ~ j when their cyclic distance is at most k
    static Graph cycle_power(int n, int k) {
        if (k < 1) throw precondition_error("cycle_power: k must be >= 1");
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int d = 1; d <= k; ++d) {
                int j = (i + d) % n;
                if (j != i) g.add_edge(i, j);
            }
        return g;
    }

    static Graph matching(int n) {
        Graph g(n);
        for (int i = 0; i + 1 < n; i += 2) g.add_edge(i, i + 1);
        return g;
    }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static Graph complete_bipartite(int a, int b) {
        Graph g(a + b);
        for (int u = 0; u < a; ++u)
            for (int v = a; v < a + b; ++v) g.add_edge(u, v);
        return g;
    }

    // vertices of b get labels shifted by a.vertex_count()
    static Graph disjoint_union(const Graph& a, const Graph& b) {
        Graph g(a.vertex_count() + b.vertex_count());
        for (auto [u, v] : a.edges()) g.add_edge(u, v);
        int off = a.vertex_count();
        for (auto [u, v] : b.edges()) g.add_edge(u + off, v + off);
        return g;
    }

    Graph induced(const std::vector<int>& keep) const {
        Graph g(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (adjacent(keep[i], keep[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw precondition_error("Graph: vertex out of range");
    }

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<Bitset> adj_;
};

// Proper 2-coloring (side per vertex) if the graph is bipartite.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] != -1) continue;
        side[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            const Bitset& r = g.row(u);
            for (std::size_t v = r.find_first(); v != Bitset::npos; v = r.find_next(v)) {
                int w = static_cast<int>(v);
                if (side[v] == -1) {
                    side[v] = 1 - side[static_cast<std::size_t>(u)];
                    queue.push_back(w);
                } else if (side[v] == side[static_cast<std::size_t>(u)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

// Repeatedly removes a minimum-degree vertex (lowest index on ties); the
// returned order lists vertices in removal order.
inline std::vector<int> degeneracy_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<bool> gone(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[static_cast<std::size_t>(v)] &&
                (best == -1 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(best)]))
                best = v;
        gone[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        const Bitset& r = g.row(best);
        for (std::size_t v = r.find_first(); v != Bitset::npos; v = r.find_next(v))
            if (!gone[v]) --deg[v];
    }
    return order;
}

}  // namespace monopart
