// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monopart/monopart.hpp"

using namespace monopart;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Bitset full_region(int n) {
    Bitset b(static_cast<std::size_t>(n));
    b.set_all();
    return b;
}

struct Criterion {
    int id;
    std::string label;
    bool passed;
    std::string detail;
};

// ---------------------------------------------------------------- criterion 1

// 1000 random instances satisfying the greedy-extension preconditions must
// all embed, within 10 seconds overall.
Criterion crit_greedy_extension() {
    auto t0 = Clock::now();
    Rng rng(0xACC1);
    int ok = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        int cap = 1 + static_cast<int>(rng.below(4));
        int bsz = 1 + static_cast<int>(rng.below(40));
        int asz = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * cap)));
        int pool = 2 * bsz + static_cast<int>(rng.below(10));
        int n = asz + pool;
        Graph host(n);
        Bitset pool_mask(static_cast<std::size_t>(n));
        for (int v = asz; v < n; ++v) pool_mask.set(static_cast<std::size_t>(v));
        int missing = pool / (2 * cap);
        std::vector<int> pv;
        for (int a = 0; a < asz; ++a) {
            pv.clear();
            for (int v = asz; v < n; ++v) pv.push_back(v);
            rng.shuffle(pv);
            for (std::size_t i = static_cast<std::size_t>(missing); i < pv.size(); ++i)
                host.add_edge(a, pv[i]);
        }
        std::vector<int> a_images;
        for (int a = 0; a < asz; ++a) a_images.push_back(a);
        std::vector<std::vector<int>> b_neighbors(static_cast<std::size_t>(bsz));
        for (auto& nb : b_neighbors) {
            int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(cap) + 1));
            std::vector<int> av = a_images;
            rng.shuffle(av);
            nb.assign(av.begin(), av.begin() + std::min<std::size_t>(static_cast<std::size_t>(d), av.size()));
        }

        auto images = greedy_bipartite_extend(b_neighbors, host, a_images, pool_mask, cap);
        if (!images) continue;
        bool valid = true;
        std::set<int> seen;
        for (std::size_t j = 0; j < b_neighbors.size() && valid; ++j) {
            int img = (*images)[j];
            if (!pool_mask.test(static_cast<std::size_t>(img)) || !seen.insert(img).second) valid = false;
            for (int a : b_neighbors[j])
                if (!host.adjacent(a_images[static_cast<std::size_t>(a)], img)) valid = false;
        }
        if (valid) ++ok;
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/" << trials << " extensions valid in " << secs << "s";
    return {1, "greedy bipartite extension always lands under its preconditions", ok == trials && secs < 10.0,
            d.str()};
}

// ---------------------------------------------------------------- criterion 2

// Partition + verify across a size/density/family grid: every certificate
// accepted, every piece count within budget, every run under a minute.
Criterion crit_pipeline_grid() {
    std::vector<std::pair<GraphFamily, GraphFamily>> fams;
    fams.emplace_back(GraphFamily::cycles(), GraphFamily::cycles());
    fams.emplace_back(GraphFamily::paths(), GraphFamily::cycles());
    fams.emplace_back(GraphFamily::cycle_power(2), GraphFamily::cycle_power(2));

    PipelineParams params;
    int runs = 0, verified = 0;
    double worst = 0.0;
    long worst_pieces = 0;
    const int max_runs = 50;
    for (int n : {50, 100, 200, 300}) {
        for (auto [num, den] : {std::pair<int, int>{1, 10}, {3, 10}, {1, 2}, {7, 10}, {9, 10}}) {
            for (std::size_t f = 0; f < fams.size(); ++f) {
                if (runs >= max_runs) break;
                ++runs;
                ColoredCompleteGraph g = gen_random(
                    n, Rational(num, den),
                    0xACC2 + static_cast<std::uint64_t>(runs));
                PipelineParams p = params;
                p.seed = static_cast<std::uint64_t>(runs);
                auto t0 = Clock::now();
                auto cert = partition(g, fams[f].first, fams[f].second, p);
                double secs = seconds_since(t0);
                worst = std::max(worst, secs);
                worst_pieces = std::max(worst_pieces, static_cast<long>(cert.pieces.size()));
                if (secs < 60.0 && static_cast<int>(cert.pieces.size()) <= params.piece_budget &&
                    verify_certificate(g, fams[f].first, fams[f].second, cert).accepted)
                    ++verified;
            }
        }
    }
    std::ostringstream d;
    d << verified << "/" << runs << " grid runs verified, worst " << worst << "s, max pieces "
      << worst_pieces;
    return {2, "partition certificates verify across the size/density/family grid", verified == runs,
            d.str()};
}

// ---------------------------------------------------------------- criterion 3

int naive_min_pieces(const ColoredCompleteGraph& g, const GraphFamily& fr, const GraphFamily& fb) {
    int n = g.vertex_count();
    std::set<std::vector<int>> hostable;
    for (const auto& rec : enumerate_mono_copies(g, fr, fb, n)) hostable.insert(rec.verts);
    int best = n + 1;
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int v) -> void {
        if (static_cast<int>(blocks.size()) >= best) return;
        if (v == n) {
            for (const auto& blk : blocks)
                if (!hostable.count(blk)) return;
            best = static_cast<int>(blocks.size());
            return;
        }
        // index, not a range-for: deeper calls push_back and may reallocate
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            blocks[bi].push_back(v);
            self(self, v + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({v});
        self(self, v + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
    return best;
}

// The exact oracle never reports more pieces than the pipeline produces, and
// on tiny hosts it agrees with an independent all-partitions search.
Criterion crit_oracle_consistency() {
    GraphFamily cycles = GraphFamily::cycles();
    GraphFamily matchings = GraphFamily::matchings();
    PipelineParams params;
    int ok = 0, cross_ok = 0, cross_total = 0;
    const int total = 200;
    for (int i = 0; i < total; ++i) {
        int n = 4 + i % 5;  // 4..8
        const GraphFamily& fr = (i % 2 == 0) ? cycles : matchings;
        const GraphFamily& fb = cycles;
        ColoredCompleteGraph g =
            gen_random(n, Rational(1, 2), 0xACC3 + static_cast<std::uint64_t>(i));
        auto oracle = min_partition_exact(g, fr, fb);
        PipelineParams p = params;
        p.seed = static_cast<std::uint64_t>(i);
        auto cert = partition(g, fr, fb, p);
        bool fine = verify_certificate(g, fr, fb, cert).accepted &&
                    verify_certificate(g, fr, fb, oracle.certificate).accepted &&
                    oracle.pieces <= static_cast<int>(cert.pieces.size());
        if (n <= 6) {
            ++cross_total;
            if (oracle.pieces == naive_min_pieces(g, fr, fb)) ++cross_ok;
        }
        if (fine) ++ok;
    }
    std::ostringstream d;
    d << ok << "/" << total << " oracle<=pipeline with both certificates accepted, " << cross_ok
      << "/" << cross_total << " all-partitions cross-checks";
    return {3, "exact oracle is consistent with the pipeline and a reference search",
            ok == total && cross_ok == cross_total, d.str()};
}

// ---------------------------------------------------------------- criterion 4

Criterion crit_equitable_stress() {
    Rng rng(0xACC4);
    int ok = 0;
    const int total = 1000;
    for (int trial = 0; trial < total; ++trial) {
        int n = 10 + static_cast<int>(rng.below(191));  // 10..200
        int cap = 1 + static_cast<int>(rng.below(8));
        Graph g(n);
        int attempts = 4 * n * cap;
        while (attempts-- > 0) {
            int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (u == v || g.adjacent(u, v)) continue;
            if (g.degree(u) >= cap || g.degree(v) >= cap) continue;
            g.add_edge(u, v);
        }
        int r = g.max_degree() + 1;
        auto col = equitable_color(g, r, rng.next());

        bool valid = static_cast<int>(col.classes.size()) == r;
        std::vector<int> hits(static_cast<std::size_t>(n), 0);
        std::size_t lo = static_cast<std::size_t>(n), hi = 0;
        for (const auto& cls : col.classes) {
            lo = std::min(lo, cls.size());
            hi = std::max(hi, cls.size());
            for (std::size_t i = 0; i < cls.size() && valid; ++i) {
                ++hits[static_cast<std::size_t>(cls[i])];
                for (std::size_t j = i + 1; j < cls.size(); ++j)
                    if (g.adjacent(cls[i], cls[j])) valid = false;
            }
        }
        for (int h : hits)
            if (h != 1) valid = false;
        if (hi - lo > 1) valid = false;
        if (valid) ++ok;
    }
    std::ostringstream d;
    d << ok << "/" << total << " equitable colorings proper with class sizes within one";
    return {4, "equitable coloring stress over random bounded-degree graphs", ok == total, d.str()};
}

// ---------------------------------------------------------------- criterion 5

Criterion crit_cylinder_cover() {
    Rng rng(0xACC5);
    PipelineParams params;
    GraphFamily matchings = GraphFamily::matchings();
    GraphFamily paths = GraphFamily::paths();
    int ok = 0;
    const int total = 500;
    for (int trial = 0; trial < total; ++trial) {
        int k = 3 + static_cast<int>(rng.below(3));
        int base = 3 * k + static_cast<int>(rng.below(4));
        std::vector<int> sizes;
        for (int i = 0; i < k; ++i) sizes.push_back(base + static_cast<int>(rng.below(3)));

        // arithmetic identity: every part is left with exactly the residue
        auto w = correction_weights(sizes);
        int res = cover_residue(sizes);
        int vmax = *std::max_element(sizes.begin(), sizes.end());
        long wsum = 0;
        bool valid = true;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (w[i] != vmax - sizes[i]) valid = false;
            wsum += w[i];
        }
        for (std::size_t i = 0; i < sizes.size(); ++i)
            if (sizes[i] - (wsum - w[i]) != res) valid = false;
        if (res < 0) valid = false;  // spread <= 2 on base >= 3k keeps it nonnegative

        // and the cover itself exhausts an all-red cylinder in <= k+1 pieces
        int n = 0;
        std::vector<std::vector<int>> parts;
        for (int s : sizes) {
            std::vector<int> part;
            for (int i = 0; i < s; ++i) part.push_back(n++);
            parts.push_back(std::move(part));
        }
        Graph host = Graph::complete(n);
        Cylinder cyl(parts, Color::Red, params.epsilon, params.d, Rational(1, 4));
        const GraphFamily& fam = (k == 3) ? matchings : paths;
        auto pieces = cover_cylinder(host, cyl, fam, params, rng.next());
        if (!pieces || static_cast<int>(pieces->size()) > k + 1) valid = false;
        if (valid) {
            std::vector<int> hits(static_cast<std::size_t>(n), 0);
            for (const auto& pc : *pieces) {
                if (pc.member_n != static_cast<int>(pc.host_vertices.size())) valid = false;
                if (!check_embedding(fam.member(pc.member_n), host, pc.host_vertices)) valid = false;
                for (int v : pc.host_vertices) ++hits[static_cast<std::size_t>(v)];
            }
            for (int h : hits)
                if (h != 1) valid = false;
        }
        if (valid) ++ok;
    }
    std::ostringstream d;
    d << ok << "/" << total << " weight identities + covers within k+1 pieces";
    return {5, "cylinder covers exhaust every part with at most k+1 members", ok == total, d.str()};
}

// ---------------------------------------------------------------- criterion 6

Criterion crit_slicing() {
    Rng rng(0xACC6);
    Rational eps(3, 10);
    int certified = 0, slices_ok = 0, slices_total = 0;
    const int want_pairs = 100;
    int attempts = 0;
    while (certified < want_pairs && attempts < 2000) {
        ++attempts;
        int na = 8 + static_cast<int>(rng.below(5));
        int nb = 8 + static_cast<int>(rng.below(5));
        int n = na + nb;
        Graph g(n);
        // dense random pairs pass the exact check often; p = 1 always does
        int pden = 20;
        int pnum = (attempts % 4 == 0) ? 20 : 17 + static_cast<int>(rng.below(3));
        for (int u = 0; u < na; ++u)
            for (int v = na; v < n; ++v)
                if (rng.chance(pnum, pden)) g.add_edge(u, v);
        std::vector<int> av, bv;
        for (int i = 0; i < na; ++i) av.push_back(i);
        for (int i = 0; i < nb; ++i) bv.push_back(na + i);
        Bitset am = Bitset::of(static_cast<std::size_t>(n), av);
        Bitset bm = Bitset::of(static_cast<std::size_t>(n), bv);
        auto rep = check_regularity_exact(g, am, bm, eps);
        if (rep.verdict != Verdict::Regular) continue;
        ++certified;
        Rational d = density(g, am, bm);

        for (const auto& beta : {Rational(1, 2), Rational(2, 3)}) {
            for (int rep_i = 0; rep_i < 3; ++rep_i) {
                ++slices_total;
                auto sp = slice_params(eps, d, beta);
                // ceil(beta * side)
                auto sub_size = [&](int side) {
                    return static_cast<int>((beta.num() * side + beta.den() - 1) / beta.den());
                };
                std::vector<int> sa = av, sb = bv;
                rng.shuffle(sa);
                rng.shuffle(sb);
                sa.resize(static_cast<std::size_t>(sub_size(na)));
                sb.resize(static_cast<std::size_t>(sub_size(nb)));
                Bitset sam = Bitset::of(static_cast<std::size_t>(n), sa);
                Bitset sbm = Bitset::of(static_cast<std::size_t>(n), sb);
                auto sliced = check_regularity_exact(g, sam, sbm, sp.eps_prime);
                Rational dprime = density(g, sam, sbm);
                if (sliced.verdict == Verdict::Regular && sp.d_low < dprime && dprime < sp.d_high)
                    ++slices_ok;
            }
        }
    }
    std::ostringstream d;
    d << certified << " certified pairs, " << slices_ok << "/" << slices_total
      << " slices regular at eps' with density within eps";
    return {6, "slices of exactly certified regular pairs keep the sliced parameters",
            certified == want_pairs && slices_ok == slices_total, d.str()};
}

// ---------------------------------------------------------------- criterion 7

Criterion crit_lower_bound_family() {
    int bad = 0, pairs = 0;
    for (int cap : {2, 3, 4}) {
        GraphFamily f = GraphFamily::lower_bound(cap, 0xACC7);
        std::vector<const Graph*> members;
        for (int m = 1; m <= 64; ++m) members.push_back(&f.member(m));
        for (int m = 1; m <= 64; ++m) {
            const Graph& g = *members[static_cast<std::size_t>(m - 1)];
            if (g.max_degree() > cap) ++bad;
            if (!bipartition(g)) ++bad;
        }
        for (int n0 = 1; n0 <= 64; ++n0)
            for (int n1 = n0 + 1; n1 <= 64; ++n1) {
                ++pairs;
                const Graph& small = *members[static_cast<std::size_t>(n0 - 1)];
                const Graph& large = *members[static_cast<std::size_t>(n1 - 1)];
                for (int u = 0; u < n0; ++u)
                    for (int v = u + 1; v < n0; ++v)
                        if (small.adjacent(u, v) && !large.adjacent(u, v)) ++bad;
            }
    }
    std::ostringstream d;
    d << pairs << " ordered pairs checked across caps 2..4, " << bad << " violations";
    return {7, "lower-bound family grows monotonically under labeled inclusion", bad == 0, d.str()};
}

// ---------------------------------------------------------------- criterion 8

Criterion crit_regularity_fixtures() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;

    Graph kb = Graph::complete_bipartite(8, 8);
    Bitset a(16), b(16);
    for (int i = 0; i < 8; ++i) a.set(static_cast<std::size_t>(i));
    for (int i = 8; i < 16; ++i) b.set(static_cast<std::size_t>(i));
    for (const auto& eps : {Rational(1, 10), Rational(3, 10)}) {
        auto rep = check_regularity(kb, a, b, eps);
        if (rep.verdict != Verdict::Regular || !rep.checked_exactly) ok = false;
    }

    Graph pm(16);
    for (int i = 0; i < 8; ++i) pm.add_edge(i, 8 + i);
    Rational eps(1, 5);
    auto rep = check_regularity(pm, a, b, eps);
    if (rep.verdict != Verdict::Irregular || !rep.witness) {
        ok = false;
    } else {
        const auto& [xs, ys] = *rep.witness;
        Bitset xm = Bitset::of(16, xs);
        Bitset ym = Bitset::of(16, ys);
        // re-derive: the witness is qualified and deviates by at least eps
        bool q1 = Rational(static_cast<std::int64_t>(xs.size())) > eps * Rational(8);
        bool q2 = Rational(static_cast<std::int64_t>(ys.size())) > eps * Rational(8);
        Rational dev = density(pm, xm, ym) - density(pm, a, b);
        if (dev < Rational(0)) dev = Rational(0) - dev;
        if (!q1 || !q2 || dev < eps) ok = false;
    }
    double secs = seconds_since(t0);
    if (secs >= 240.0) ok = false;  // 120s per fixture pair
    d << "complete bipartite regular at 0.1/0.3, matching refuted at 0.2 with valid witness, "
      << secs << "s";
    return {8, "pinned regularity fixtures behave as advertised", ok, d.str()};
}

// ---------------------------------------------------------------- criterion 9

Criterion crit_mono_triangles() {
    GraphFamily cycles = GraphFamily::cycles();
    int ok = 0;
    const int total = 200;
    for (int i = 0; i < total; ++i) {
        ColoredCompleteGraph g =
            i == 0 ? ColoredCompleteGraph(Graph::complete(6))
                   : (i == 1 ? ColoredCompleteGraph(Graph::edgeless(6))
                             : gen_random(6, Rational(1, 2), 0xACC9 + static_cast<std::uint64_t>(i)));
        auto copy = find_mono_copy(g, full_region(6), cycles.member(3), cycles.member(3), 1000000);

        bool red_exists = false, blue_exists = false;
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 6; ++y)
                for (int z = y + 1; z < 6; ++z) {
                    if (g.color(x, y) == Color::Red && g.color(y, z) == Color::Red &&
                        g.color(x, z) == Color::Red)
                        red_exists = true;
                    if (g.color(x, y) == Color::Blue && g.color(y, z) == Color::Blue &&
                        g.color(x, z) == Color::Blue)
                        blue_exists = true;
                }

        bool valid = copy.has_value() && (red_exists || blue_exists);
        if (valid) {
            // red is tried first, so the reported color must match existence
            Color expect = red_exists ? Color::Red : Color::Blue;
            if (copy->color != expect) valid = false;
            if (!check_embedding(cycles.member(3), g.view(copy->color), copy->map)) valid = false;
        }
        if (valid) ++ok;
    }
    std::ostringstream d;
    d << ok << "/" << total << " six-vertex colorings yielded a verified mono triangle";
    return {9, "mono triangle search agrees with exhaustive existence on K6", ok == total, d.str()};
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(crit_greedy_extension());
    results.push_back(crit_pipeline_grid());
    results.push_back(crit_oracle_consistency());
    results.push_back(crit_equitable_stress());
    results.push_back(crit_cylinder_cover());
    results.push_back(crit_slicing());
    results.push_back(crit_lower_bound_family());
    results.push_back(crit_regularity_fixtures());
    results.push_back(crit_mono_triangles());

    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("[%s] criterion %d: %s (%s)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.label.c_str(), r.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
