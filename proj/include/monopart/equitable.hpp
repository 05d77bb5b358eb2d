#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "monopart/graph.hpp"
#include "monopart/rng.hpp"

namespace monopart {

struct EquitableColoring {
    // exactly r classes, vertex lists ascending; empty classes possible when r > n
    std::vector<std::vector<int>> classes;

    std::vector<int> sizes() const {
        std::vector<int> s;
        s.reserve(classes.size());
        for (const auto& c : classes) s.push_back(static_cast<int>(c.size()));
        return s;
    }
};

namespace detail {

class ClassState {
public:
    ClassState(const Graph& g, int r, std::vector<int> assign)
        : g_(&g), r_(r), cls_(std::move(assign)), masks_(static_cast<std::size_t>(r),
                                                         Bitset(static_cast<std::size_t>(g.vertex_count()))),
          sizes_(static_cast<std::size_t>(r), 0) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            masks_[static_cast<std::size_t>(cls_[static_cast<std::size_t>(v)])].set(static_cast<std::size_t>(v));
            ++sizes_[static_cast<std::size_t>(cls_[static_cast<std::size_t>(v)])];
        }
    }

    int size_of(int c) const { return sizes_[static_cast<std::size_t>(c)]; }
    int class_of(int v) const { return cls_[static_cast<std::size_t>(v)]; }
    const Bitset& mask(int c) const { return masks_[static_cast<std::size_t>(c)]; }
    int r() const { return r_; }

    bool movable(int v, int to) const {
        return cls_[static_cast<std::size_t>(v)] != to && g_->degree_in(v, mask(to)) == 0;
    }

    void move(int v, int to) {
        int from = cls_[static_cast<std::size_t>(v)];
        masks_[static_cast<std::size_t>(from)].reset(static_cast<std::size_t>(v));
        masks_[static_cast<std::size_t>(to)].set(static_cast<std::size_t>(v));
        --sizes_[static_cast<std::size_t>(from)];
        ++sizes_[static_cast<std::size_t>(to)];
        cls_[static_cast<std::size_t>(v)] = to;
    }

    std::vector<int> assignment() const { return cls_; }

    // A move chain shifts one unit of size from `from_set` to `to_set` through
    // intermediate classes without disturbing their sizes. BFS over classes;
    // an edge X -> Y exists when some vertex of X has no neighbor in Y.
    bool chain_shift(const std::vector<char>& from_set, const std::vector<char>& to_set) {
        std::vector<int> parent_class(static_cast<std::size_t>(r_), -1);
        std::vector<int> parent_vertex(static_cast<std::size_t>(r_), -1);
        std::vector<char> visited(static_cast<std::size_t>(r_), 0);
        std::vector<int> queue;
        for (int c = 0; c < r_; ++c)
            if (from_set[static_cast<std::size_t>(c)]) {
                visited[static_cast<std::size_t>(c)] = 1;
                queue.push_back(c);
            }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (int y = 0; y < r_; ++y) {
                if (visited[static_cast<std::size_t>(y)]) continue;
                int mover = -1;
                const Bitset& mx = mask(x);
                for (std::size_t v = mx.find_first(); v != Bitset::npos; v = mx.find_next(v))
                    if (g_->degree_in(static_cast<int>(v), mask(y)) == 0) {
                        mover = static_cast<int>(v);
                        break;
                    }
                if (mover == -1) continue;
                visited[static_cast<std::size_t>(y)] = 1;
                parent_class[static_cast<std::size_t>(y)] = x;
                parent_vertex[static_cast<std::size_t>(y)] = mover;
                if (to_set[static_cast<std::size_t>(y)]) {
                    // execute from the destination end backwards; each recorded
                    // mover's target only loses vertices before its own move
                    int cur = y;
                    while (parent_class[static_cast<std::size_t>(cur)] != -1) {
                        move(parent_vertex[static_cast<std::size_t>(cur)], cur);
                        cur = parent_class[static_cast<std::size_t>(cur)];
                    }
                    return true;
                }
                queue.push_back(y);
            }
        }
        return false;
    }

    // Flip one alternating component between classes x and y to shift d = (#x - #y)
    // members; properness survives because components are maximal.
    bool kempe_shift(int x, int y, int max_d) {
        Bitset pool = mask(x) | mask(y);
        Bitset seen(pool.size_bits());
        for (std::size_t s = pool.find_first(); s != Bitset::npos; s = pool.find_next(s)) {
            if (seen.test(s)) continue;
            std::vector<int> comp;
            std::vector<std::size_t> stack{s};
            seen.set(s);
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                comp.push_back(static_cast<int>(u));
                Bitset nbrs = g_->row(static_cast<int>(u));
                nbrs &= pool;
                for (std::size_t w = nbrs.find_first(); w != Bitset::npos; w = nbrs.find_next(w))
                    if (!seen.test(w)) {
                        seen.set(w);
                        stack.push_back(w);
                    }
            }
            int cx = 0;
            for (int v : comp)
                if (cls_[static_cast<std::size_t>(v)] == x) ++cx;
            int d = 2 * cx - static_cast<int>(comp.size());
            if (d >= 1 && d <= max_d) {
                for (int v : comp) move(v, cls_[static_cast<std::size_t>(v)] == x ? y : x);
                return true;
            }
        }
        return false;
    }

private:
    const Graph* g_;
    int r_;
    std::vector<int> cls_;
    std::vector<Bitset> masks_;
    std::vector<int> sizes_;
};

// smallest non-conflicting class, ties by index
inline std::vector<int> greedy_assignment(const Graph& g, int r, const std::vector<int>& order) {
    int n = g.vertex_count();
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    std::vector<int> sizes(static_cast<std::size_t>(r), 0);
    std::vector<Bitset> masks(static_cast<std::size_t>(r), Bitset(static_cast<std::size_t>(n)));
    for (int v : order) {
        int best = -1;
        for (int c = 0; c < r; ++c) {
            if (g.degree_in(v, masks[static_cast<std::size_t>(c)]) != 0) continue;
            if (best == -1 || sizes[static_cast<std::size_t>(c)] < sizes[static_cast<std::size_t>(best)]) best = c;
        }
        cls[static_cast<std::size_t>(v)] = best;
        masks[static_cast<std::size_t>(best)].set(static_cast<std::size_t>(v));
        ++sizes[static_cast<std::size_t>(best)];
    }
    return cls;
}

// targets == nullptr balances to max-min <= 1, otherwise to the exact sizes
inline bool rebalance(ClassState& st, const std::vector<int>* targets) {
    int r = st.r();
    while (true) {
        int lo = st.size_of(0), hi = st.size_of(0);
        bool done = true;
        std::vector<char> src(static_cast<std::size_t>(r), 0), dst(static_cast<std::size_t>(r), 0);
        if (targets == nullptr) {
            for (int c = 0; c < r; ++c) {
                lo = std::min(lo, st.size_of(c));
                hi = std::max(hi, st.size_of(c));
            }
            done = hi - lo <= 1;
            for (int c = 0; c < r; ++c) {
                if (st.size_of(c) >= lo + 2) src[static_cast<std::size_t>(c)] = 1;
                if (st.size_of(c) == lo) dst[static_cast<std::size_t>(c)] = 1;
            }
        } else {
            for (int c = 0; c < r; ++c) {
                int t = (*targets)[static_cast<std::size_t>(c)];
                if (st.size_of(c) > t) { src[static_cast<std::size_t>(c)] = 1; done = false; }
                if (st.size_of(c) < t) { dst[static_cast<std::size_t>(c)] = 1; done = false; }
            }
        }
        if (done) return true;
        if (st.chain_shift(src, dst)) continue;

        // chains exhausted; try alternating-component flips between class pairs
        bool flipped = false;
        for (int x = 0; x < r && !flipped; ++x) {
            if (!src[static_cast<std::size_t>(x)]) continue;
            for (int y = 0; y < r && !flipped; ++y) {
                if (x == y || !dst[static_cast<std::size_t>(y)]) continue;
                int gap;
                if (targets == nullptr) {
                    gap = st.size_of(x) - st.size_of(y) - 1;
                } else {
                    gap = std::min(st.size_of(x) - (*targets)[static_cast<std::size_t>(x)],
                                   (*targets)[static_cast<std::size_t>(y)] - st.size_of(y));
                }
                if (gap >= 1 && st.kempe_shift(x, y, gap)) flipped = true;
            }
        }
        if (!flipped) return false;
    }
}

inline std::optional<std::vector<int>> exhaustive_equitable(const Graph& g, int r) {
    int n = g.vertex_count();
    int cap = (n + r - 1) / r;
    int at_cap_limit = n % r == 0 ? r : n % r;  // how many classes may reach the ceiling
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    std::vector<int> sizes(static_cast<std::size_t>(r), 0);
    std::vector<Bitset> masks(static_cast<std::size_t>(r), Bitset(static_cast<std::size_t>(n)));

    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) {
            found = cls;
            return true;
        }
        int max_used = -1;
        for (int c = 0; c < r; ++c)
            if (sizes[static_cast<std::size_t>(c)] > 0) max_used = c;
        int at_cap = 0;
        for (int c = 0; c < r; ++c)
            if (sizes[static_cast<std::size_t>(c)] == cap) ++at_cap;
        for (int c = 0; c <= std::min(max_used + 1, r - 1); ++c) {
            if (sizes[static_cast<std::size_t>(c)] >= cap) continue;
            if (sizes[static_cast<std::size_t>(c)] == cap - 1 && at_cap >= at_cap_limit && n % r != 0)
                continue;
            if (g.degree_in(v, masks[static_cast<std::size_t>(c)]) != 0) continue;
            cls[static_cast<std::size_t>(v)] = c;
            masks[static_cast<std::size_t>(c)].set(static_cast<std::size_t>(v));
            ++sizes[static_cast<std::size_t>(c)];
            if (self(self, v + 1)) return true;
            masks[static_cast<std::size_t>(c)].reset(static_cast<std::size_t>(v));
            --sizes[static_cast<std::size_t>(c)];
            cls[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

inline EquitableColoring classes_from_assignment(int n, int r, const std::vector<int>& cls) {
    EquitableColoring out;
    out.classes.assign(static_cast<std::size_t>(r), {});
    for (int v = 0; v < n; ++v) out.classes[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])].push_back(v);
    return out;
}

}  // namespace detail

// Proper coloring with exactly r classes whose sizes differ by at most one.
// Requires r >= max_degree + 1; deterministic for fixed (graph, r, seed).
inline EquitableColoring equitable_color(const Graph& g, int r, std::uint64_t seed = 0) {
    int n = g.vertex_count();
    if (r < 1) throw precondition_error("equitable_color: r must be >= 1");
    if (r <= g.max_degree())
        throw unsupported_error("equitable_color: needs r >= max_degree + 1");

    std::vector<int> base_order = degeneracy_order(g);
    std::reverse(base_order.begin(), base_order.end());

    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<int> order = base_order;
        if (attempt > 0) Rng(derive_seed(seed, 0xEC0 + static_cast<std::uint64_t>(attempt))).shuffle(order);
        detail::ClassState st(g, r, detail::greedy_assignment(g, r, order));
        if (detail::rebalance(st, nullptr))
            return detail::classes_from_assignment(n, r, st.assignment());
    }
    if (n <= 10) {
        auto cls = detail::exhaustive_equitable(g, r);
        if (cls) return detail::classes_from_assignment(n, r, *cls);
    }
    throw unsupported_error("equitable_color: rebalancing failed");
}

// Equitable proper 2-coloring of a bipartite graph: each connected component
// contributes its two forced sides one way or the other; a subset-sum DP picks
// flips so the class sizes differ by at most one. Returns nullopt when the
// graph is not bipartite or no balanced flip assignment exists.
inline std::optional<EquitableColoring> equitable_bipartition(const Graph& g) {
    auto side = bipartition(g);
    if (!side) return std::nullopt;
    int n = g.vertex_count();

    // collect components with their side-0 members
    std::vector<std::vector<int>> comp_v0, comp_v1;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> stack{s}, v0, v1;
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ((*side)[static_cast<std::size_t>(u)] == 0 ? v0 : v1).push_back(u);
            const Bitset& r = g.row(u);
            for (std::size_t w = r.find_first(); w != Bitset::npos; w = r.find_next(w))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(static_cast<int>(w));
                }
        }
        comp_v0.push_back(std::move(v0));
        comp_v1.push_back(std::move(v1));
    }

    int target = (n + 1) / 2;
    std::size_t m = comp_v0.size();
    // reachable[c][s]: can the first c components put exactly s vertices in class 0
    std::vector<std::vector<char>> reach(m + 1, std::vector<char>(static_cast<std::size_t>(target + 1), 0));
    reach[0][0] = 1;
    for (std::size_t c = 0; c < m; ++c) {
        int a = static_cast<int>(comp_v0[c].size()), b = static_cast<int>(comp_v1[c].size());
        for (int s = 0; s <= target; ++s) {
            if (!reach[c][static_cast<std::size_t>(s)]) continue;
            if (s + a <= target) reach[c + 1][static_cast<std::size_t>(s + a)] = 1;
            if (s + b <= target) reach[c + 1][static_cast<std::size_t>(s + b)] = 1;
        }
    }
    if (!reach[m][static_cast<std::size_t>(target)]) return std::nullopt;

    EquitableColoring out;
    out.classes.assign(2, {});
    int s = target;
    for (std::size_t c = m; c-- > 0;) {
        int a = static_cast<int>(comp_v0[c].size()), b = static_cast<int>(comp_v1[c].size());
        bool keep = s - a >= 0 && reach[c][static_cast<std::size_t>(s - a)];
        const auto& to0 = keep ? comp_v0[c] : comp_v1[c];
        const auto& to1 = keep ? comp_v1[c] : comp_v0[c];
        for (int v : to0) out.classes[0].push_back(v);
        for (int v : to1) out.classes[1].push_back(v);
        s -= keep ? a : b;
    }
    std::sort(out.classes[0].begin(), out.classes[0].end());
    std::sort(out.classes[1].begin(), out.classes[1].end());
    return out;
}

// Proper coloring with prescribed class sizes (zeros allowed). Tries, in order:
// an equitable coloring rebalanced to the targets, a per-component flip DP for
// bipartite graphs on up to three active classes, and exhaustive search for
// tiny graphs. Returns vertex -> class index over the full target vector.
inline std::optional<std::vector<int>> proper_coloring_with_sizes(const Graph& g,
                                                                  const std::vector<int>& targets,
                                                                  std::uint64_t seed = 0) {
    int n = g.vertex_count();
    long total = 0;
    std::vector<int> active;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0) throw precondition_error("proper_coloring_with_sizes: negative target");
        total += targets[i];
        if (targets[i] > 0) active.push_back(static_cast<int>(i));
    }
    if (total != n) throw precondition_error("proper_coloring_with_sizes: sizes do not sum to n");
    if (n == 0) return std::vector<int>{};

    int ra = static_cast<int>(active.size());
    auto expand = [&](const std::vector<int>& compact) {
        std::vector<int> full(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) full[static_cast<std::size_t>(v)] = active[static_cast<std::size_t>(compact[static_cast<std::size_t>(v)])];
        return full;
    };

    if (ra > g.max_degree()) {
        std::vector<int> compact_targets;
        compact_targets.reserve(static_cast<std::size_t>(ra));
        for (int i : active) compact_targets.push_back(targets[static_cast<std::size_t>(i)]);
        try {
            EquitableColoring eq = equitable_color(g, ra, seed);
            // align classes to targets by size (largest to largest), then fix up
            std::vector<int> class_order(static_cast<std::size_t>(ra)), target_order(static_cast<std::size_t>(ra));
            for (int i = 0; i < ra; ++i) class_order[static_cast<std::size_t>(i)] = target_order[static_cast<std::size_t>(i)] = i;
            std::stable_sort(class_order.begin(), class_order.end(), [&](int x, int y) {
                return eq.classes[static_cast<std::size_t>(x)].size() > eq.classes[static_cast<std::size_t>(y)].size();
            });
            std::stable_sort(target_order.begin(), target_order.end(), [&](int x, int y) {
                return compact_targets[static_cast<std::size_t>(x)] > compact_targets[static_cast<std::size_t>(y)];
            });
            std::vector<int> cls(static_cast<std::size_t>(n));
            for (int i = 0; i < ra; ++i)
                for (int v : eq.classes[static_cast<std::size_t>(class_order[static_cast<std::size_t>(i)])])
                    cls[static_cast<std::size_t>(v)] = target_order[static_cast<std::size_t>(i)];
            detail::ClassState st(g, ra, cls);
            if (detail::rebalance(st, &compact_targets)) return expand(st.assignment());
        } catch (const unsupported_error&) {
            // fall through to the other routes
        }
    }

    if (ra <= 3) {
        auto side = bipartition(g);
        if (side) {
            // per-component choice: side0 -> p, side1 -> q (p != q unless the
            // component is a single vertex)
            std::vector<std::vector<int>> cv0, cv1;
            {
                std::vector<char> seen(static_cast<std::size_t>(n), 0);
                for (int s = 0; s < n; ++s) {
                    if (seen[static_cast<std::size_t>(s)]) continue;
                    std::vector<int> stack{s}, v0, v1;
                    seen[static_cast<std::size_t>(s)] = 1;
                    while (!stack.empty()) {
                        int u = stack.back();
                        stack.pop_back();
                        ((*side)[static_cast<std::size_t>(u)] == 0 ? v0 : v1).push_back(u);
                        const Bitset& r = g.row(u);
                        for (std::size_t w = r.find_first(); w != Bitset::npos; w = r.find_next(w))
                            if (!seen[w]) { seen[w] = 1; stack.push_back(static_cast<int>(w)); }
                    }
                    cv0.push_back(std::move(v0));
                    cv1.push_back(std::move(v1));
                }
            }
            std::size_t m = cv0.size();
            int t0 = targets[static_cast<std::size_t>(active[0])];
            int t1 = ra >= 2 ? targets[static_cast<std::size_t>(active[1])] : 0;
            // choices: ordered pairs (p, q), p receiving side0; single-part for
            // isolated vertices
            struct Choice { int p, q; };
            std::vector<Choice> pair_choices;
            for (int p = 0; p < ra; ++p)
                for (int q = 0; q < ra; ++q)
                    if (p != q) pair_choices.push_back({p, q});
            auto idx = [&](int l0, int l1) { return static_cast<std::size_t>(l0) * static_cast<std::size_t>(t1 + 1) + static_cast<std::size_t>(l1); };
            std::size_t states = static_cast<std::size_t>(t0 + 1) * static_cast<std::size_t>(t1 + 1);
            std::vector<std::vector<signed char>> chosen(m, std::vector<signed char>(states, -1));
            std::vector<char> cur(states, 0), nxt;
            cur[idx(0, 0)] = 1;
            for (std::size_t c = 0; c < m; ++c) {
                nxt.assign(states, 0);
                int a = static_cast<int>(cv0[c].size()), b = static_cast<int>(cv1[c].size());
                bool isolated = (a + b == 1);
                for (int l0 = 0; l0 <= t0; ++l0)
                    for (int l1 = 0; l1 <= t1; ++l1) {
                        if (!cur[idx(l0, l1)]) continue;
                        int nc = 0;
                        for (const auto& ch : pair_choices) {
                            ++nc;
                            if (isolated && ch.q != (ch.p + 1) % ra) continue;  // dedupe isolated placements
                            int d0 = (ch.p == 0 ? a : 0) + (ch.q == 0 ? b : 0);
                            int d1 = (ch.p == 1 ? a : 0) + (ch.q == 1 ? b : 0);
                            if (l0 + d0 > t0 || l1 + d1 > t1) continue;
                            std::size_t to = idx(l0 + d0, l1 + d1);
                            if (!nxt[to]) {
                                nxt[to] = 1;
                                if (chosen[c][to] == -1) chosen[c][to] = static_cast<signed char>(nc - 1);
                            }
                        }
                    }
                cur.swap(nxt);
            }
            // final state: remaining load goes to the last active class implicitly
            int want0 = t0, want1 = t1;
            if (cur[idx(want0, want1)]) {
                std::vector<int> cls(static_cast<std::size_t>(n), ra - 1);
                int l0 = want0, l1 = want1;
                for (std::size_t c = m; c-- > 0;) {
                    signed char chi = chosen[c][idx(l0, l1)];
                    // chi records the first choice that reached this state going
                    // forward; rewind by re-deriving the predecessor
                    const Choice ch = pair_choices[static_cast<std::size_t>(chi)];
                    int a = static_cast<int>(cv0[c].size()), b = static_cast<int>(cv1[c].size());
                    int d0 = (ch.p == 0 ? a : 0) + (ch.q == 0 ? b : 0);
                    int d1 = (ch.p == 1 ? a : 0) + (ch.q == 1 ? b : 0);
                    for (int v : cv0[c]) cls[static_cast<std::size_t>(v)] = ch.p;
                    for (int v : cv1[c]) cls[static_cast<std::size_t>(v)] = ch.q;
                    l0 -= d0;
                    l1 -= d1;
                }
                return expand(cls);
            }
        }
    }

    if (n <= 16) {
        std::vector<int> cls(static_cast<std::size_t>(n), -1);
        std::vector<int> room;
        room.reserve(static_cast<std::size_t>(ra));
        for (int i : active) room.push_back(targets[static_cast<std::size_t>(i)]);
        std::vector<Bitset> masks(static_cast<std::size_t>(ra), Bitset(static_cast<std::size_t>(n)));
        auto rec = [&](auto&& self, int v) -> bool {
            if (v == n) return true;
            for (int c = 0; c < ra; ++c) {
                if (room[static_cast<std::size_t>(c)] == 0) continue;
                if (g.degree_in(v, masks[static_cast<std::size_t>(c)]) != 0) continue;
                --room[static_cast<std::size_t>(c)];
                masks[static_cast<std::size_t>(c)].set(static_cast<std::size_t>(v));
                cls[static_cast<std::size_t>(v)] = c;
                if (self(self, v + 1)) return true;
                ++room[static_cast<std::size_t>(c)];
                masks[static_cast<std::size_t>(c)].reset(static_cast<std::size_t>(v));
            }
            return false;
        };
        if (rec(rec, 0)) return expand(cls);
    }
    return std::nullopt;
}

}  // namespace monopart
