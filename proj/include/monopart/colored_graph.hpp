#pragma once

#include <string>

#include "monopart/graph.hpp"

namespace monopart {

enum class Color { Red, Blue };

inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }
inline std::string color_name(Color c) { return c == Color::Red ? "red" : "blue"; }

// Complete graph with every edge colored red or blue. Both color classes are
// materialized as Graph views so one set of density/regularity kernels serves
// either color.
class ColoredCompleteGraph {
public:
    // red holds the red edge set; blue becomes its complement
    explicit ColoredCompleteGraph(Graph red) : n_(red.vertex_count()), red_(std::move(red)), blue_(n_) {
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (!red_.adjacent(u, v)) blue_.add_edge(u, v);
    }

    int vertex_count() const { return n_; }

    Color color(int u, int v) const {
        if (u == v) throw precondition_error("ColoredCompleteGraph::color: u == v");
        return red_.adjacent(u, v) ? Color::Red : Color::Blue;
    }

    const Graph& view(Color c) const { return c == Color::Red ? red_ : blue_; }

    Bitset all_vertices() const {
        Bitset b(static_cast<std::size_t>(n_));
        b.set_all();
        return b;
    }

private:
    int n_ = 0;
    Graph red_;
    Graph blue_;
};

}  // namespace monopart
