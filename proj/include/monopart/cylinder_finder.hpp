#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monopart/colored_graph.hpp"
#include "monopart/cylinder.hpp"
#include "monopart/params.hpp"
#include "monopart/regularity.hpp"
#include "monopart/rng.hpp"

namespace monopart {

// lexicographically least k-clique, or nullopt
inline std::optional<std::vector<int>> find_clique(const Graph& g, int k) {
    if (k <= 0) throw precondition_error("find_clique: k must be positive");
    int n = g.vertex_count();
    if (k > n) return std::nullopt;
    std::vector<int> picked;
    Bitset cand(static_cast<std::size_t>(n));
    cand.set_all();
    std::optional<std::vector<int>> result;
    auto rec = [&](auto&& self, const Bitset& avail) -> bool {
        if (static_cast<int>(picked.size()) == k) {
            result = picked;
            return true;
        }
        if (avail.count() < static_cast<std::size_t>(k) - picked.size()) return false;
        for (std::size_t v = avail.find_first(); v != Bitset::npos; v = avail.find_next(v)) {
            picked.push_back(static_cast<int>(v));
            Bitset next = avail;
            next &= g.row(static_cast<int>(v));
            // keep the search lexicographic: only vertices above v
            for (std::size_t u = next.find_first(); u != Bitset::npos && u <= v; u = next.find_next(u))
                next.reset(u);
            if (self(self, next)) return true;
            picked.pop_back();
        }
        return false;
    };
    rec(rec, cand);
    return result;
}

// first monochromatic k-clique, red tried before blue
inline std::optional<std::pair<std::vector<int>, Color>> find_mono_clique(
    const ColoredCompleteGraph& g, int k) {
    if (k == 1) {
        if (g.vertex_count() == 0) return std::nullopt;
        return std::make_pair(std::vector<int>{0}, Color::Red);
    }
    if (auto c = find_clique(g.view(Color::Red), k)) return std::make_pair(*c, Color::Red);
    if (auto c = find_clique(g.view(Color::Blue), k)) return std::make_pair(*c, Color::Blue);
    return std::nullopt;
}

namespace detail {

// majority color between two vertex sets; red keeps exact ties
inline Color majority_color(const ColoredCompleteGraph& g, const Bitset& a, const Bitset& b) {
    long red = edges_between(g.view(Color::Red), a, b);
    long total = static_cast<long>(a.count()) * static_cast<long>(b.count());
    return 2 * red >= total ? Color::Red : Color::Blue;
}

}  // namespace detail

// Searches the region for k disjoint equal parts forming a monochromatic
// cylinder: every pair has density at least params.d in the cylinder color
// and no sampled witness against eps-regularity. Randomized attempts over
// partition sizes; returns nullopt when nothing passes, which callers treat
// as "use the extraction fallback", never as a nonexistence proof.
inline std::optional<Cylinder> find_regular_cylinder(const ColoredCompleteGraph& g,
                                                     const Bitset& region, int k,
                                                     const PipelineParams& params,
                                                     std::uint64_t seed) {
    if (k < 2) throw precondition_error("find_regular_cylinder: k must be >= 2");
    long avail = static_cast<long>(region.count());
    if (params.theoretical_mode) {
        long need = 1;
        for (int i = 0; i < 2 * k && need < (1L << 60); ++i) need *= 2;
        if (avail < need)
            throw precondition_error(
                "find_regular_cylinder: theoretical mode requires n >= 2^(2k) vertices in the region");
    }
    long p_cap = avail / std::max(1, params.min_part);
    if (p_cap < k) return std::nullopt;
    int p_hi = static_cast<int>(std::min<long>(3L * k + 2, p_cap));
    int span = p_hi - k + 1;

    std::vector<int> base = region.to_vector();
    // structured colorings cluster by red degree, so consecutive blocks of
    // the degree-sorted order make good part candidates; the first pass runs
    // through all part counts on that layout before trying random ones
    std::vector<int> sorted_pool = base;
    {
        const Graph& red_view = g.view(Color::Red);
        std::stable_sort(sorted_pool.begin(), sorted_pool.end(), [&](int x, int y) {
            return Bitset::count_and(red_view.row(x), region) <
                   Bitset::count_and(red_view.row(y), region);
        });
    }
    Rng rng(derive_seed(seed, 0xCF1D));

    for (int attempt = 0; attempt < params.cylinder_attempts; ++attempt) {
        int p = k + attempt % span;
        int part_size = static_cast<int>(avail / p);
        std::vector<int> pool;
        if (attempt < span) {
            pool = sorted_pool;
        } else {
            pool = base;
            rng.shuffle(pool);
        }

        std::vector<Bitset> parts;
        parts.reserve(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) {
            std::vector<int> slice(pool.begin() + static_cast<long>(i) * part_size,
                                   pool.begin() + static_cast<long>(i + 1) * part_size);
            parts.push_back(Bitset::of(static_cast<std::size_t>(g.vertex_count()), slice));
        }

        // majority-color graph on the parts
        Graph red_majority(p);
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (detail::majority_color(g, parts[static_cast<std::size_t>(i)],
                                           parts[static_cast<std::size_t>(j)]) == Color::Red)
                    red_majority.add_edge(i, j);
        std::optional<std::vector<int>> clique;
        Color color = Color::Red;
        if ((clique = find_clique(red_majority, k))) {
            color = Color::Red;
        } else {
            Graph blue_majority(p);
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j)
                    if (!red_majority.adjacent(i, j)) blue_majority.add_edge(i, j);
            if ((clique = find_clique(blue_majority, k))) color = Color::Blue;
        }
        if (!clique) continue;

        const Graph& view = g.view(color);
        bool ok = true;
        for (std::size_t i = 0; i < clique->size() && ok; ++i)
            for (std::size_t j = i + 1; j < clique->size() && ok; ++j) {
                const Bitset& a = parts[static_cast<std::size_t>((*clique)[i])];
                const Bitset& b = parts[static_cast<std::size_t>((*clique)[j])];
                if (density(view, a, b) < params.d) {
                    ok = false;
                    break;
                }
                auto verdict = check_regularity_heuristic(
                    view, a, b, params.epsilon,
                    derive_seed(seed, 0xA7A + static_cast<std::uint64_t>(attempt * 97 + i * 13 + j)),
                    params.regularity_trials);
                if (verdict.verdict == Verdict::Irregular) ok = false;
            }
        if (!ok) continue;

        std::vector<std::vector<int>> chosen;
        chosen.reserve(static_cast<std::size_t>(k));
        for (int idx : *clique) chosen.push_back(parts[static_cast<std::size_t>(idx)].to_vector());
        return Cylinder(std::move(chosen), color, params.epsilon, params.d, Rational(0));
    }
    return std::nullopt;
}

}  // namespace monopart
