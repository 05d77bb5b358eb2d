#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "monopart/bitset.hpp"
#include "monopart/errors.hpp"
#include "monopart/graph.hpp"
#include "monopart/rng.hpp"

namespace monopart {

struct EmbedOptions {
    long node_budget = 200000;  // counted per attempted assignment
    int restarts = 1;
    std::uint64_t seed = 0;
};

// pattern vertices by descending degree, index as tie-break
inline std::vector<int> pattern_order_desc_degree(const Graph& pattern) {
    std::vector<int> order(static_cast<std::size_t>(pattern.vertex_count()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return pattern.degree(a) > pattern.degree(b); });
    return order;
}

// core-first order: reverse of iterated minimum-degree elimination
inline std::vector<int> pattern_order_core_first(const Graph& pattern) {
    auto order = degeneracy_order(pattern);
    std::reverse(order.begin(), order.end());
    return order;
}

namespace detail {

struct EmbedSearch {
    const Graph& pattern;
    const Graph& host;
    const std::vector<int>& order;
    long budget;
    long nodes = 0;
    Rng* rng = nullptr;  // null: candidates in ascending host order
    std::vector<int> assign;
    std::vector<Bitset> dom;

    EmbedSearch(const Graph& p, const Graph& h, const std::vector<int>& ord, long budget_)
        : pattern(p), host(h), order(ord), budget(budget_),
          assign(static_cast<std::size_t>(p.vertex_count()), -1) {}

    bool run(std::size_t pos) {
        if (pos == order.size()) return true;
        int p = order[pos];
        std::vector<int> cands = dom[static_cast<std::size_t>(p)].to_vector();
        if (rng) rng->shuffle(cands);
        for (int h : cands) {
            if (++nodes > budget) return false;
            // save domains of still-unassigned vertices, then prune
            std::vector<std::pair<std::size_t, Bitset>> trail;
            assign[static_cast<std::size_t>(p)] = h;
            bool dead = false;
            for (std::size_t qi = pos + 1; qi < order.size() && !dead; ++qi) {
                std::size_t q = static_cast<std::size_t>(order[qi]);
                Bitset next = dom[q];
                next.reset(static_cast<std::size_t>(h));
                if (pattern.adjacent(p, order[qi])) next &= host.row(h);
                if (!(next == dom[q])) {
                    if (next.none()) dead = true;
                    trail.emplace_back(q, dom[q]);
                    dom[q] = std::move(next);
                }
            }
            if (!dead && run(pos + 1)) return true;
            for (auto& [q, saved] : trail) dom[q] = std::move(saved);
            assign[static_cast<std::size_t>(p)] = -1;
            if (nodes > budget) return false;
        }
        return false;
    }
};

}  // namespace detail

// Embeds pattern into host injectively with per-vertex candidate sets.
// domains[v] is a bitset over host vertices. Returns the map pattern
// vertex -> host vertex, or nullopt when no embedding was found within
// the node budget (exhaustive iff the budget was not hit; check
// nodes_used < budget for a definite negative).
inline std::optional<std::vector<int>> embed_subgraph(const Graph& pattern, const Graph& host,
                                                      const std::vector<Bitset>& domains,
                                                      const std::vector<int>& order,
                                                      const EmbedOptions& opts = {},
                                                      long* nodes_used = nullptr) {
    int np = pattern.vertex_count();
    if (static_cast<int>(domains.size()) != np)
        throw precondition_error("embed_subgraph: one domain per pattern vertex required");
    if (static_cast<int>(order.size()) != np)
        throw precondition_error("embed_subgraph: order must cover the pattern exactly");
    if (nodes_used) *nodes_used = 0;
    if (np == 0) return std::vector<int>{};

    // static degree prefilter within the union of all domains
    Bitset region(static_cast<std::size_t>(host.vertex_count()));
    for (const auto& dm : domains) {
        if (static_cast<int>(dm.size_bits()) != host.vertex_count())
            throw precondition_error("embed_subgraph: domain width must match host");
        region |= dm;
    }
    std::vector<Bitset> filtered = domains;
    for (int v = 0; v < np; ++v) {
        int need = pattern.degree(v);
        if (need == 0) continue;
        Bitset& dm = filtered[static_cast<std::size_t>(v)];
        for (std::size_t h = dm.find_first(); h != Bitset::npos; h = dm.find_next(h))
            if (static_cast<int>(Bitset::count_and(host.row(static_cast<int>(h)), region)) < need)
                dm.reset(h);
        if (dm.none()) return std::nullopt;
    }

    long spent = 0;
    Rng base(opts.seed);
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        detail::EmbedSearch search(pattern, host, order, opts.node_budget - spent);
        search.dom = filtered;
        Rng restart_rng = base.split(0x5EED + static_cast<std::uint64_t>(r));
        if (r > 0) search.rng = &restart_rng;
        bool found = search.run(0);
        spent += search.nodes;
        if (nodes_used) *nodes_used = spent;
        if (found) return search.assign;
        if (spent >= opts.node_budget) return std::nullopt;
    }
    return std::nullopt;
}

// convenience: all pattern vertices share one candidate region
inline std::optional<std::vector<int>> embed_subgraph_in_region(
    const Graph& pattern, const Graph& host, const Bitset& region, const std::vector<int>& order,
    const EmbedOptions& opts = {}, long* nodes_used = nullptr) {
    std::vector<Bitset> domains(static_cast<std::size_t>(pattern.vertex_count()), region);
    return embed_subgraph(pattern, host, domains, order, opts, nodes_used);
}

}  // namespace monopart
