#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monopart/cylinder_finder.hpp"
#include "monopart/embedding.hpp"
#include "monopart/oracle.hpp"
#include "monopart/ramsey_cover.hpp"

namespace monopart {

struct GoodBadReport {
    std::vector<std::vector<int>> bad_sets;    // bad_sets[i]: bad for part i, good below
    std::vector<std::vector<int>> good_parts;  // parts with every bad vertex removed
};

// A part vertex is good for part i when it lies in part i or has color-c
// degree into part i at least delta/2 of the part. Each vertex lands in the
// bad set of its first bad part, if any.
inline GoodBadReport classify_good(const ColoredCompleteGraph& g,
                                   const std::vector<std::vector<int>>& parts, Color c,
                                   const Rational& delta) {
    const Graph& view = g.view(c);
    std::size_t k = parts.size();
    std::vector<Bitset> masks;
    masks.reserve(k);
    for (const auto& p : parts) masks.push_back(Bitset::of(static_cast<std::size_t>(g.vertex_count()), p));

    GoodBadReport rep;
    rep.bad_sets.resize(k);
    rep.good_parts.resize(k);
    for (std::size_t home = 0; home < k; ++home) {
        for (int v : parts[home]) {
            int first_bad = -1;
            for (std::size_t i = 0; i < k && first_bad < 0; ++i) {
                if (i == home || parts[i].empty()) continue;
                auto deg = static_cast<long long>(Bitset::count_and(view.row(v), masks[i]));
                // deg >= (delta/2) * |part i|
                if (2 * deg * delta.den() < delta.num() * static_cast<long long>(parts[i].size()))
                    first_bad = static_cast<int>(i);
            }
            if (first_bad < 0)
                rep.good_parts[home].push_back(v);
            else
                rep.bad_sets[static_cast<std::size_t>(first_bad)].push_back(v);
        }
    }
    return rep;
}

namespace detail {

struct PipelineCtx {
    const ColoredCompleteGraph& g;
    const PipelineParams& params;
    int max_deg;
    int pieces = 0;
};

inline void emit(PipelineCtx& ctx, std::vector<CertPiece>& out, CertPiece piece) {
    if (++ctx.pieces > ctx.params.piece_budget)
        throw budget_error("partition: piece budget exhausted; raise --piece-budget to continue");
    out.push_back(std::move(piece));
}

std::vector<CertPiece> solve(PipelineCtx& ctx, const Bitset& region, const GraphFamily& f_red,
                             const GraphFamily& f_blue, std::uint64_t seed);

// exact when small enough, otherwise one singleton per vertex
inline std::vector<CertPiece> resolve_small(PipelineCtx& ctx, const Bitset& region,
                                            const GraphFamily& f_red, const GraphFamily& f_blue) {
    std::vector<CertPiece> out;
    std::vector<int> verts = region.to_vector();
    if (verts.empty()) return out;
    if (static_cast<int>(verts.size()) <= std::min(ctx.params.oracle_cap, kOracleCap)) {
        Graph red_sub(static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (ctx.g.color(verts[i], verts[j]) == Color::Red)
                    red_sub.add_edge(static_cast<int>(i), static_cast<int>(j));
        ColoredCompleteGraph sub(std::move(red_sub));
        auto res = min_partition_exact(sub, f_red, f_blue);
        for (auto& piece : res.certificate.pieces) {
            for (int& h : piece.host_vertices) h = verts[static_cast<std::size_t>(h)];
            emit(ctx, out, std::move(piece));
        }
        return out;
    }
    for (int v : verts)
        emit(ctx, out, CertPiece{Color::Red, f_red.name(), 1, {v}});
    return out;
}

// extraction ladder: carve members until only a small remainder is left,
// then finish that off exactly
inline std::vector<CertPiece> extract_all(PipelineCtx& ctx, const Bitset& region,
                                          const GraphFamily& f_red, const GraphFamily& f_blue,
                                          std::uint64_t seed) {
    std::vector<CertPiece> out;
    long count = static_cast<long>(region.count());
    if (count == 0) return out;
    Rational eps(std::min<long long>(ctx.params.small_n_threshold, count), count);
    auto cover = cover_most(ctx.g, region, f_red, f_blue, eps, ctx.params,
                            ctx.params.piece_budget - ctx.pieces, seed);
    for (auto& copy : cover.pieces)
        emit(ctx, out,
             CertPiece{copy.color, copy.color == Color::Red ? f_red.name() : f_blue.name(),
                       copy.member_n, std::move(copy.map)});
    auto rest = resolve_small(ctx, cover.leftovers, f_red, f_blue);
    for (auto& piece : rest) out.push_back(std::move(piece));
    return out;
}

struct GlueOutcome {
    bool ok = false;
    std::vector<CertPiece> completed;
    std::vector<Bitset> pools;  // part masks after removing glued vertices
};

// Completes reduced-family pieces back to full members of fam by embedding
// each piece's removed class into one cylinder part through opposite-color
// edges. All-or-nothing: pools are only meant to replace the caller's masks
// when ok.
inline GlueOutcome glue_reduced_pieces(PipelineCtx& ctx, const std::vector<CertPiece>& reduced,
                                       const GraphFamily& fam_reduced, const GraphFamily& fam,
                                       Color piece_color, std::vector<Bitset> pools) {
    GlueOutcome res;
    res.pools = std::move(pools);
    const Graph& view = ctx.g.view(piece_color);
    int cap = std::max(1, fam.max_degree());
    for (const auto& piece : reduced) {
        const auto& data = fam_reduced.member_data(piece.member_n);
        if (!data.minus)
            throw unsupported_error("glue_reduced_pieces: piece lacks reconstruction data");
        const MinusClassData& md = *data.minus;
        std::vector<std::vector<int>> b_neighbors(md.removed.size());
        for (auto [i, j] : md.glue_edges)
            b_neighbors[static_cast<std::size_t>(j)].push_back(i);

        std::optional<std::vector<int>> images;
        std::size_t chosen = 0;
        for (std::size_t t = 0; t < res.pools.size() && !images; ++t) {
            const Bitset& pool = res.pools[t];
            std::size_t pool_size = pool.count();
            if (pool_size < 2 * md.removed.size()) continue;
            bool degrees_ok = true;
            for (int img : piece.host_vertices) {
                std::size_t deg = Bitset::count_and(view.row(img), pool);
                if (2ULL * static_cast<unsigned long long>(cap) * deg <
                    (2ULL * static_cast<unsigned long long>(cap) - 1) * pool_size) {
                    degrees_ok = false;
                    break;
                }
            }
            if (!degrees_ok) continue;
            images = greedy_bipartite_extend(b_neighbors, view, piece.host_vertices, pool, cap, false);
            chosen = t;
        }
        if (!images) return res;  // ok stays false

        std::vector<int> full(static_cast<std::size_t>(md.source_n), -1);
        for (std::size_t i = 0; i < md.kept.size(); ++i)
            full[static_cast<std::size_t>(md.kept[i])] = piece.host_vertices[i];
        for (std::size_t j = 0; j < md.removed.size(); ++j) {
            full[static_cast<std::size_t>(md.removed[j])] = (*images)[j];
            res.pools[chosen].reset(static_cast<std::size_t>((*images)[j]));
        }
        res.completed.push_back(CertPiece{piece_color, fam.name(), md.source_n, std::move(full)});
    }
    res.ok = true;
    return res;
}

inline std::vector<CertPiece> solve(PipelineCtx& ctx, const Bitset& region,
                                    const GraphFamily& f_red, const GraphFamily& f_blue,
                                    std::uint64_t seed) {
    std::vector<CertPiece> out;
    long n_w = static_cast<long>(region.count());
    if (n_w == 0) return out;

    // a 1-colorable family covers any region in one edgeless piece
    for (auto [fam, color] : {std::pair<const GraphFamily*, Color>{&f_red, Color::Red},
                              {&f_blue, Color::Blue}}) {
        if (fam->chi() != 1) continue;
        const Graph& member = fam->member(static_cast<int>(n_w));
        if (!member.edges().empty())
            throw unsupported_error("solve: 1-colorable family has a member with edges");
        emit(ctx, out, CertPiece{color, fam->name(), static_cast<int>(n_w), region.to_vector()});
        return out;
    }

    if (n_w < ctx.params.small_n_threshold) return resolve_small(ctx, region, f_red, f_blue);

    // whole region in one piece, or all but one vertex plus a remainder
    for (int drop = 0; drop <= 1; ++drop) {
        auto big = find_mono_copy(ctx.g, region, f_red.member(static_cast<int>(n_w) - drop),
                                  f_blue.member(static_cast<int>(n_w) - drop),
                                  ctx.params.embed_node_budget);
        if (!big) continue;
        Bitset rest = region;
        for (int h : big->map) rest.reset(static_cast<std::size_t>(h));
        emit(ctx, out,
             CertPiece{big->color, big->color == Color::Red ? f_red.name() : f_blue.name(),
                       big->member_n, std::move(big->map)});
        auto tail = resolve_small(ctx, rest, f_red, f_blue);
        for (auto& piece : tail) out.push_back(std::move(piece));
        return out;
    }

    int k = ctx.params.resolved_k(ctx.max_deg);
    auto cyl = find_regular_cylinder(ctx.g, region, k, ctx.params, derive_seed(seed, 0xF1D0));
    if (!cyl) return extract_all(ctx, region, f_red, f_blue, derive_seed(seed, 0xFA11));

    Color c = cyl->color;
    const GraphFamily& fam_cyl = c == Color::Red ? f_red : f_blue;
    const GraphFamily& fam_oth = c == Color::Red ? f_blue : f_red;
    GraphFamily fam_oth_reduced = family_minus_class(fam_oth, fam_oth.chi());

    std::vector<std::vector<int>> parts = cyl->parts;

    // carve up everything outside the cylinder, absorbing a small leftover
    // into the parts
    Bitset rest = region;
    for (const auto& p : parts)
        for (int v : p) rest.reset(static_cast<std::size_t>(v));
    long rest_count = static_cast<long>(rest.count());
    if (rest_count > 0) {
        long part_size = static_cast<long>(parts[0].size());
        for (const auto& p : parts) part_size = std::min(part_size, static_cast<long>(p.size()));
        long absorb_cap =
            k * ((ctx.params.epsilon.num() * part_size) / ctx.params.epsilon.den());
        Rational eps_arg(std::min(absorb_cap, rest_count), rest_count);
        auto cover = cover_most(ctx.g, rest, f_red, f_blue, eps_arg, ctx.params,
                                ctx.params.piece_budget - ctx.pieces, derive_seed(seed, 0xC0E5));
        for (auto& copy : cover.pieces)
            emit(ctx, out,
                 CertPiece{copy.color, copy.color == Color::Red ? f_red.name() : f_blue.name(),
                           copy.member_n, std::move(copy.map)});
        for (int v : cover.leftovers.to_vector()) {
            std::size_t smallest = 0;
            for (std::size_t i = 1; i < parts.size(); ++i)
                if (parts[i].size() < parts[smallest].size()) smallest = i;
            parts[smallest].push_back(v);
        }
        for (auto& p : parts) std::sort(p.begin(), p.end());
    }

    // pull out vertices with too little cylinder-color degree into some part
    Rational delta = ctx.params.resolved_delta(ctx.max_deg);
    auto report = classify_good(ctx.g, parts, c, delta);
    parts = report.good_parts;

    std::vector<Bitset> pools;
    pools.reserve(parts.size());
    for (const auto& p : parts)
        pools.push_back(Bitset::of(static_cast<std::size_t>(ctx.g.vertex_count()), p));

    for (std::size_t i = 0; i < report.bad_sets.size(); ++i) {
        const auto& bad = report.bad_sets[i];
        if (bad.empty()) continue;
        Bitset bad_mask = Bitset::of(static_cast<std::size_t>(ctx.g.vertex_count()), bad);
        int before = ctx.pieces;
        std::vector<CertPiece> sub =
            c == Color::Red
                ? solve(ctx, bad_mask, f_red, fam_oth_reduced, derive_seed(seed, 0xB0 + i))
                : solve(ctx, bad_mask, fam_oth_reduced, f_blue, derive_seed(seed, 0xB0 + i));
        std::vector<CertPiece> reduced;
        std::vector<CertPiece> final_color;
        for (auto& piece : sub) {
            if (piece.color == c)
                final_color.push_back(std::move(piece));
            else
                reduced.push_back(std::move(piece));
        }
        auto glue = glue_reduced_pieces(ctx, reduced, fam_oth_reduced, fam_oth, other(c), pools);
        if (!glue.ok) {
            // back out the recursion's pieces and fall back to extraction
            ctx.pieces = before;
            auto redo = extract_all(ctx, bad_mask, f_red, f_blue, derive_seed(seed, 0xBAD + i));
            for (auto& piece : redo) out.push_back(std::move(piece));
            continue;
        }
        pools = std::move(glue.pools);
        for (auto& piece : final_color) out.push_back(std::move(piece));
        for (auto& piece : glue.completed) out.push_back(std::move(piece));
    }

    // exhaust what is left of the parts
    std::vector<std::vector<int>> remnant;
    remnant.reserve(pools.size());
    for (const auto& mask : pools) remnant.push_back(mask.to_vector());
    Bitset remnant_all(static_cast<std::size_t>(ctx.g.vertex_count()));
    for (const auto& mask : pools) remnant_all |= mask;
    if (remnant_all.none()) return out;

    bool any_empty = false;
    for (const auto& p : remnant) any_empty = any_empty || p.empty();
    if (!any_empty) {
        Cylinder shrunk(remnant, c, cyl->eps, cyl->d, cyl->delta);
        auto cover = cover_cylinder(ctx.g.view(c), shrunk, fam_cyl, ctx.params,
                                    derive_seed(seed, 0xCC0E));
        if (cover) {
            for (auto& piece : *cover)
                emit(ctx, out,
                     CertPiece{c, fam_cyl.name(), piece.member_n, std::move(piece.host_vertices)});
            return out;
        }
    }
    auto tail = extract_all(ctx, remnant_all, f_red, f_blue, derive_seed(seed, 0x7A11));
    for (auto& piece : tail) out.push_back(std::move(piece));
    return out;
}

}  // namespace detail

// Partitions the vertices of the 2-colored complete graph into monochromatic
// members: red pieces from f_red, blue pieces from f_blue. The result always
// satisfies the certificate contract; the piece count is best-effort.
inline PartitionCertificate partition(const ColoredCompleteGraph& g, const GraphFamily& f_red,
                                      const GraphFamily& f_blue, const PipelineParams& params) {
    detail::PipelineCtx ctx{g, params, std::max(f_red.max_degree(), f_blue.max_degree()), 0};
    Bitset region(static_cast<std::size_t>(g.vertex_count()));
    region.set_all();
    PartitionCertificate cert;
    cert.host_n = g.vertex_count();
    cert.pieces = detail::solve(ctx, region, f_red, f_blue, params.seed);
    return cert;
}

// Bipartite variant: both colors draw from the same bipartite family. Solved
// against the doubled family with 3 cylinder parts, then every piece is split
// back into at most three members of the base family.
inline PartitionCertificate partition_bipartite(const ColoredCompleteGraph& g,
                                                const GraphFamily& fam,
                                                const PipelineParams& params) {
    if (!fam.bipartite())
        throw precondition_error("partition_bipartite: family must be bipartite");
    GraphFamily doubled = doubled_family(fam);
    PipelineParams p2 = params;
    if (!p2.k) p2.k = 3;
    PartitionCertificate inner = partition(g, doubled, doubled, p2);

    PartitionCertificate cert;
    cert.host_n = inner.host_n;
    for (const auto& piece : inner.pieces) {
        const auto& data = doubled.member_data(piece.member_n);
        if (!data.doubled)
            throw unsupported_error("partition_bipartite: doubled member lacks decomposition");
        for (const auto& block : data.doubled->blocks) {
            std::vector<int> hosts(piece.host_vertices.begin() + block.offset,
                                   piece.host_vertices.begin() + block.offset + block.size);
            cert.pieces.push_back(CertPiece{piece.color, fam.name(), block.size, std::move(hosts)});
        }
    }
    if (static_cast<int>(cert.pieces.size()) > params.piece_budget)
        throw budget_error("partition_bipartite: piece budget exhausted after splitting");
    return cert;
}

}  // namespace monopart
