#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "monopart/colored_graph.hpp"
#include "monopart/errors.hpp"
#include "monopart/family.hpp"
#include "monopart/subgraph_search.hpp"

namespace monopart {

inline constexpr int kOracleCap = 12;

struct CertPiece {
    Color color = Color::Red;
    std::string family_name;
    int member_n = 0;
    std::vector<int> host_vertices;  // family vertex i -> host_vertices[i]
};

struct PartitionCertificate {
    int host_n = 0;
    std::vector<CertPiece> pieces;
};

struct CopyRecord {
    Color color;
    int member_n;
    std::vector<int> verts;  // sorted host vertices
    std::vector<int> map;    // family vertex -> host vertex
};

namespace detail {

inline void enumerate_on_subsets(const ColoredCompleteGraph& g, const GraphFamily& fam, Color c,
                                 int max_n, std::vector<monopart::CopyRecord>& out) {
    const Graph& view = g.view(c);
    int n = g.vertex_count();
    std::vector<int> subset;
    auto rec = [&](auto&& self, int next, int want) -> void {
        if (want == 0) {
            const Graph& pattern = fam.member(static_cast<int>(subset.size()));
            Bitset region = Bitset::of(static_cast<std::size_t>(n), subset);
            EmbedOptions opts;
            opts.node_budget = std::numeric_limits<long>::max();
            // require the copy to use the whole subset: sizes match exactly
            auto m = embed_subgraph_in_region(pattern, view, region,
                                              pattern_order_desc_degree(pattern), opts);
            if (m) out.push_back({c, pattern.vertex_count(), subset, std::move(*m)});
            return;
        }
        for (int v = next; v <= n - want; ++v) {
            subset.push_back(v);
            self(self, v + 1, want - 1);
            subset.pop_back();
        }
    };
    for (int m = 1; m <= max_n; ++m) rec(rec, 0, m);
}

}  // namespace detail

// Every vertex subset of size at most max_n that hosts a monochromatic
// family member spanning it, across both colors. Singletons qualify in both
// colors. Exponential in the host size; capped at kOracleCap vertices.
inline std::vector<CopyRecord> enumerate_mono_copies(const ColoredCompleteGraph& g,
                                                             const GraphFamily& fam_red,
                                                             const GraphFamily& fam_blue, int max_n) {
    if (g.vertex_count() > kOracleCap)
        throw size_error("enumerate_mono_copies: host exceeds the exact-search cap");
    std::vector<CopyRecord> out;
    detail::enumerate_on_subsets(g, fam_red, Color::Red, std::min(max_n, g.vertex_count()), out);
    detail::enumerate_on_subsets(g, fam_blue, Color::Blue, std::min(max_n, g.vertex_count()), out);
    return out;
}

struct OracleResult {
    int pieces = 0;
    PartitionCertificate certificate;
};

// Exact minimum number of vertex-disjoint monochromatic family members
// partitioning the host, by branch and bound over the lowest uncovered
// vertex. Candidate copies are tried largest first, red before blue,
// then by vertex set.
inline OracleResult min_partition_exact(const ColoredCompleteGraph& g, const GraphFamily& fam_red,
                                        const GraphFamily& fam_blue) {
    int n = g.vertex_count();
    if (n > kOracleCap) throw size_error("min_partition_exact: host exceeds the exact-search cap");
    if (n == 0) return {0, {0, {}}};

    auto copies = enumerate_mono_copies(g, fam_red, fam_blue, n);
    std::stable_sort(copies.begin(), copies.end(),
                     [](const CopyRecord& a, const CopyRecord& b) {
                         if (a.member_n != b.member_n) return a.member_n > b.member_n;
                         if (a.color != b.color) return a.color == Color::Red;
                         return a.verts < b.verts;
                     });
    std::vector<std::vector<int>> by_vertex(static_cast<std::size_t>(n));
    std::vector<Bitset> masks;
    masks.reserve(copies.size());
    for (std::size_t i = 0; i < copies.size(); ++i) {
        masks.push_back(Bitset::of(static_cast<std::size_t>(n), copies[i].verts));
        for (int v : copies[i].verts) by_vertex[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
    }
    int max_copy = 0;
    for (const auto& c : copies) max_copy = std::max(max_copy, c.member_n);

    int best = std::numeric_limits<int>::max();
    std::vector<int> best_pick, pick;
    Bitset uncovered(static_cast<std::size_t>(n));
    uncovered.set_all();

    auto rec = [&](auto&& self, int used) -> void {
        std::size_t v = uncovered.find_first();
        if (v == Bitset::npos) {
            if (used < best) {
                best = used;
                best_pick = pick;
            }
            return;
        }
        long rest = static_cast<long>(uncovered.count());
        if (used + (rest + max_copy - 1) / max_copy >= best) return;
        for (int idx : by_vertex[v]) {
            if (!masks[static_cast<std::size_t>(idx)].is_subset_of(uncovered)) continue;
            uncovered.subtract(masks[static_cast<std::size_t>(idx)]);
            pick.push_back(idx);
            self(self, used + 1);
            pick.pop_back();
            uncovered |= masks[static_cast<std::size_t>(idx)];
        }
    };
    rec(rec, 0);

    OracleResult res;
    res.pieces = best;
    res.certificate.host_n = n;
    for (int idx : best_pick) {
        const auto& c = copies[static_cast<std::size_t>(idx)];
        res.certificate.pieces.push_back(
            {c.color, c.color == Color::Red ? fam_red.name() : fam_blue.name(), c.member_n, c.map});
    }
    return res;
}

}  // namespace monopart
