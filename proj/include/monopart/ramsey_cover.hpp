#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "monopart/colored_graph.hpp"
#include "monopart/errors.hpp"
#include "monopart/family.hpp"
#include "monopart/params.hpp"
#include "monopart/subgraph_search.hpp"

namespace monopart {

struct MonoCopy {
    Color color = Color::Red;
    int member_n = 0;
    std::vector<int> map;  // family vertex -> host vertex
};

// One monochromatic copy inside the region: the red pattern is tried first,
// then the blue one. A nullopt may mean "budget ran out", never a proof of
// absence unless the budget was not reached.
inline std::optional<MonoCopy> find_mono_copy(const ColoredCompleteGraph& g, const Bitset& region,
                                              const Graph& red_pattern, const Graph& blue_pattern,
                                              long node_budget) {
    EmbedOptions opts;
    opts.node_budget = node_budget;
    opts.restarts = 1;
    if (auto m = embed_subgraph_in_region(red_pattern, g.view(Color::Red), region,
                                          pattern_order_desc_degree(red_pattern), opts))
        return MonoCopy{Color::Red, red_pattern.vertex_count(), std::move(*m)};
    if (auto m = embed_subgraph_in_region(blue_pattern, g.view(Color::Blue), region,
                                          pattern_order_desc_degree(blue_pattern), opts))
        return MonoCopy{Color::Blue, blue_pattern.vertex_count(), std::move(*m)};
    return std::nullopt;
}

struct CoverResult {
    std::vector<MonoCopy> pieces;
    Bitset leftovers;
};

// Repeatedly carves monochromatic family members out of the region until at
// most eps * |region| vertices remain. Each round requests a copy on a fixed
// fraction of what is left and halves the request on failure; a single
// vertex always succeeds, so progress is guaranteed. Throws budget_error if
// more than piece_budget pieces would be produced.
inline CoverResult cover_most(const ColoredCompleteGraph& g, const Bitset& region,
                              const GraphFamily& fam_red, const GraphFamily& fam_blue,
                              const Rational& eps, const PipelineParams& params,
                              int piece_budget, std::uint64_t seed) {
    (void)seed;
    long n0 = static_cast<long>(region.count());
    // remaining > eps*n0  <=>  remaining * den > num * n0
    auto above_target = [&](long remaining) {
        return static_cast<__int128>(remaining) * eps.den() >
               static_cast<__int128>(eps.num()) * n0;
    };

    CoverResult out;
    out.leftovers = region;
    long remaining = n0;
    while (above_target(remaining)) {
        long want = (params.extraction_ratio.num() * remaining + params.extraction_ratio.den() - 1) /
                    params.extraction_ratio.den();
        if (want < 1) want = 1;
        if (want > remaining) want = remaining;
        std::optional<MonoCopy> copy;
        while (!copy) {
            copy = find_mono_copy(g, out.leftovers, fam_red.member(static_cast<int>(want)),
                                  fam_blue.member(static_cast<int>(want)), params.embed_node_budget);
            if (!copy) {
                if (want == 1)
                    throw unsupported_error("cover_most: failed to place a single vertex");
                want /= 2;
            }
        }
        if (static_cast<int>(out.pieces.size()) >= piece_budget)
            throw budget_error("cover_most: piece budget exhausted");
        for (int h : copy->map) out.leftovers.reset(static_cast<std::size_t>(h));
        remaining -= copy->member_n;
        out.pieces.push_back(std::move(*copy));
    }
    return out;
}

}  // namespace monopart
