#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "monopart/cylinder.hpp"
#include "monopart/equitable.hpp"
#include "monopart/family.hpp"
#include "monopart/params.hpp"
#include "monopart/subgraph_search.hpp"

namespace monopart {

// true iff map is an injective homomorphism of pattern into host
inline bool check_embedding(const Graph& pattern, const Graph& host, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != pattern.vertex_count()) return false;
    std::vector<char> used(static_cast<std::size_t>(host.vertex_count()), 0);
    for (int img : map) {
        if (img < 0 || img >= host.vertex_count()) return false;
        if (used[static_cast<std::size_t>(img)]) return false;
        used[static_cast<std::size_t>(img)] = 1;
    }
    for (auto [u, v] : pattern.edges())
        if (!host.adjacent(map[static_cast<std::size_t>(u)], map[static_cast<std::size_t>(v)]))
            return false;
    return true;
}

// Extends a partial embedding across a bipartite pattern. The A side is
// already placed (a_images); each B vertex j has pattern neighbors
// b_neighbors[j] inside A and must land in b_pool adjacent to all their
// images. Preconditions (optionally verified): pattern degree of every B
// vertex at most delta_cap, pool at least twice the B side, and every A
// image has host degree into the pool at least (1 - 1/(2*delta_cap)) of
// the pool. Under these the greedy sweep cannot get stuck: the common
// neighbourhood of at most delta_cap images misses at most half the pool.
inline std::optional<std::vector<int>> greedy_bipartite_extend(
    const std::vector<std::vector<int>>& b_neighbors, const Graph& host,
    const std::vector<int>& a_images, const Bitset& b_pool, int delta_cap,
    bool check_preconditions = true) {
    if (delta_cap < 1) throw precondition_error("greedy_bipartite_extend: delta_cap must be >= 1");
    std::size_t pool_size = b_pool.count();
    if (check_preconditions) {
        for (const auto& nb : b_neighbors) {
            if (static_cast<int>(nb.size()) > delta_cap)
                throw precondition_error("greedy_bipartite_extend: B-side degree exceeds delta_cap");
            for (int a : nb)
                if (a < 0 || a >= static_cast<int>(a_images.size()))
                    throw precondition_error("greedy_bipartite_extend: neighbor index out of range");
        }
        if (pool_size < 2 * b_neighbors.size())
            throw precondition_error("greedy_bipartite_extend: pool smaller than twice the B side");
        for (int img : a_images) {
            std::size_t deg = Bitset::count_and(host.row(img), b_pool);
            // deg >= (1 - 1/(2*cap)) * pool  <=>  2*cap*deg >= (2*cap-1)*pool
            if (2ULL * static_cast<unsigned long long>(delta_cap) * deg <
                (2ULL * static_cast<unsigned long long>(delta_cap) - 1) * pool_size)
                throw precondition_error("greedy_bipartite_extend: an A image is low degree into the pool");
        }
    }
    Bitset avail = b_pool;
    std::vector<int> images;
    images.reserve(b_neighbors.size());
    for (const auto& nb : b_neighbors) {
        Bitset cand = avail;
        for (int a : nb) cand &= host.row(a_images[static_cast<std::size_t>(a)]);
        std::size_t pick = cand.find_first();
        if (pick == Bitset::npos) return std::nullopt;
        images.push_back(static_cast<int>(pick));
        avail.reset(pick);
    }
    return images;
}

// For parts of sizes v_1..v_k, the correction copy that skips part j uses
// weights[j] vertices from every other part; after all k corrections each
// part has exactly cover_residue(sizes) vertices left.
inline std::vector<int> correction_weights(const std::vector<int>& sizes) {
    int v = *std::max_element(sizes.begin(), sizes.end());
    std::vector<int> w;
    w.reserve(sizes.size());
    for (int s : sizes) w.push_back(v - s);
    return w;
}

inline int cover_residue(const std::vector<int>& sizes) {
    int v = *std::max_element(sizes.begin(), sizes.end());
    int total = 0;
    for (int s : sizes) total += v - s;
    return v - total;
}

// Embeds pattern into the host color view with quota[i] vertices placed in
// pools[i]. Pattern vertices are distributed over the parts by a proper
// coloring with the exact class sizes, so pattern edges only ever cross
// parts. Returns the vertex map or nullopt when the coloring or the
// backtracking search fails within budget.
inline std::optional<std::vector<int>> cylinder_embed(const Graph& pattern, const Graph& host_view,
                                                      const std::vector<Bitset>& pools,
                                                      const std::vector<int>& quota,
                                                      const PipelineParams& params,
                                                      std::uint64_t seed) {
    if (pools.size() != quota.size())
        throw precondition_error("cylinder_embed: one quota per pool required");
    int total = 0;
    for (std::size_t i = 0; i < quota.size(); ++i) {
        if (quota[i] < 0) throw precondition_error("cylinder_embed: negative quota");
        if (static_cast<std::size_t>(quota[i]) > pools[i].count())
            throw precondition_error("cylinder_embed: quota exceeds pool");
        total += quota[i];
    }
    if (total != pattern.vertex_count())
        throw precondition_error("cylinder_embed: quotas must sum to the pattern size");
    if (pattern.vertex_count() == 0) return std::vector<int>{};

    auto classes = proper_coloring_with_sizes(pattern, quota, seed);
    if (!classes) return std::nullopt;

    std::vector<Bitset> domains;
    domains.reserve(static_cast<std::size_t>(pattern.vertex_count()));
    for (int v = 0; v < pattern.vertex_count(); ++v)
        domains.push_back(pools[static_cast<std::size_t>((*classes)[static_cast<std::size_t>(v)])]);

    EmbedOptions opts;
    opts.node_budget = params.embed_node_budget;
    opts.restarts = params.embed_restarts;
    opts.seed = derive_seed(seed, 0xE3BD);
    return embed_subgraph(pattern, host_view, domains, pattern_order_core_first(pattern), opts);
}

struct CylinderCoverPiece {
    int member_n = 0;
    std::vector<int> host_vertices;  // family vertex i sits at host_vertices[i]
};

// Exhausts a cylinder with at most k+1 family members: one correction copy
// per part deficit (spread over the other k-1 parts) and one balanced final
// copy across all k parts. Fails (nullopt) when the part sizes are too
// lopsided for a nonnegative residue or an embedding cannot be found.
inline std::optional<std::vector<CylinderCoverPiece>> cover_cylinder(const Graph& host_view,
                                                                     const Cylinder& cyl,
                                                                     const GraphFamily& fam,
                                                                     const PipelineParams& params,
                                                                     std::uint64_t seed) {
    int k = cyl.k();
    auto sizes = cyl.sizes();
    if (*std::min_element(sizes.begin(), sizes.end()) == 0 &&
        *std::max_element(sizes.begin(), sizes.end()) > 0)
        return std::nullopt;
    int residue = cover_residue(sizes);
    if (residue < 0) return std::nullopt;
    auto weights = correction_weights(sizes);

    std::vector<Bitset> pools;
    pools.reserve(static_cast<std::size_t>(k));
    for (const auto& part : cyl.parts)
        pools.push_back(Bitset::of(static_cast<std::size_t>(host_view.vertex_count()), part));

    std::vector<CylinderCoverPiece> pieces;
    auto place = [&](const Graph& pattern, const std::vector<int>& quota,
                     std::uint64_t salt) -> bool {
        auto map = cylinder_embed(pattern, host_view, pools, quota, params, derive_seed(seed, salt));
        if (!map) return false;
        for (int h : *map)
            for (auto& pool : pools) pool.reset(static_cast<std::size_t>(h));
        pieces.push_back({pattern.vertex_count(), std::move(*map)});
        return true;
    };

    for (int j = 0; j < k; ++j) {
        int w = weights[static_cast<std::size_t>(j)];
        if (w == 0) continue;
        std::vector<int> quota(static_cast<std::size_t>(k), w);
        quota[static_cast<std::size_t>(j)] = 0;
        if (!place(fam.member(w * (k - 1)), quota, 0xC0D0 + static_cast<std::uint64_t>(j)))
            return std::nullopt;
    }
    if (residue > 0) {
        std::vector<int> quota(static_cast<std::size_t>(k), residue);
        if (!place(fam.member(residue * k), quota, 0xF17A)) return std::nullopt;
    }
    return pieces;
}

}  // namespace monopart
