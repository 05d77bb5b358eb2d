#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <vector>

#include "monopart/graph.hpp"
#include "monopart/rational.hpp"
#include "monopart/regularity.hpp"
#include "monopart/rng.hpp"

using namespace monopart;

namespace {

// independent oracle: enumerate every qualified sub-pair directly
Verdict naive_regular(const Graph& g, const std::vector<int>& a, const std::vector<int>& b,
                      const Rational& eps) {
    Bitset am = Bitset::of(static_cast<std::size_t>(g.vertex_count()), a);
    Bitset bm = Bitset::of(static_cast<std::size_t>(g.vertex_count()), b);
    Rational d = density(g, am, bm);
    auto qualified = [&](std::size_t cnt, std::size_t total) {
        // |X| > eps |A|
        return Rational(static_cast<std::int64_t>(cnt)) >
               eps * Rational(static_cast<std::int64_t>(total));
    };
    for (unsigned xa = 1; xa < (1u << a.size()); ++xa) {
        std::vector<int> xs;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (xa >> i & 1) xs.push_back(a[i]);
        if (!qualified(xs.size(), a.size())) continue;
        Bitset xm = Bitset::of(static_cast<std::size_t>(g.vertex_count()), xs);
        for (unsigned yb = 1; yb < (1u << b.size()); ++yb) {
            std::vector<int> ys;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (yb >> i & 1) ys.push_back(b[i]);
            if (!qualified(ys.size(), b.size())) continue;
            Bitset ym = Bitset::of(static_cast<std::size_t>(g.vertex_count()), ys);
            Rational dev = density(g, xm, ym) - d;
            if (dev < Rational(0)) dev = Rational(0) - dev;
            if (!(dev < eps)) return Verdict::Irregular;
        }
    }
    return Verdict::Regular;
}

Graph random_bipartite_host(int na, int nb, int pnum, int pden, Rng& rng) {
    Graph g(na + nb);
    for (int u = 0; u < na; ++u)
        for (int v = na; v < na + nb; ++v)
            if (rng.chance(pnum, pden)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("density and edges_between are exact") {
    Graph g = Graph::complete_bipartite(3, 4);
    Bitset a = Bitset::of(7, {0, 1, 2});
    Bitset b = Bitset::of(7, {3, 4, 5, 6});
    REQUIRE(edges_between(g, a, b) == 12);
    REQUIRE(density(g, a, b) == Rational(1));

    Graph m(6);
    m.add_edge(0, 3);
    m.add_edge(1, 4);
    Bitset l = Bitset::of(6, {0, 1, 2});
    Bitset r = Bitset::of(6, {3, 4, 5});
    REQUIRE(density(g, a, b).den() == 1);
    REQUIRE(density(m, l, r) == Rational(2, 9));
    REQUIRE_THROWS_AS(density(m, l, l), precondition_error);
}

TEST_CASE("complete bipartite pairs are regular at any eps") {
    Graph g = Graph::complete_bipartite(8, 8);
    Bitset a = Bitset::of(16, {0, 1, 2, 3, 4, 5, 6, 7});
    Bitset b = Bitset::of(16, {8, 9, 10, 11, 12, 13, 14, 15});
    for (const char* e : {"0.1", "0.3"}) {
        auto rep = check_regularity(g, a, b, Rational::from_decimal(e));
        REQUIRE(rep.verdict == Verdict::Regular);
        REQUIRE(rep.checked_exactly);
    }
}

TEST_CASE("a perfect matching between 8+8 is irregular at eps 0.2") {
    Graph g(16);
    for (int i = 0; i < 8; ++i) g.add_edge(i, 8 + i);
    Bitset a = Bitset::of(16, {0, 1, 2, 3, 4, 5, 6, 7});
    Bitset b = Bitset::of(16, {8, 9, 10, 11, 12, 13, 14, 15});
    Rational eps(1, 5);
    auto rep = check_regularity(g, a, b, eps);
    REQUIRE(rep.verdict == Verdict::Irregular);
    REQUIRE(rep.witness.has_value());

    // re-derive the witness from scratch
    const auto& [xs, ys] = *rep.witness;
    REQUIRE(Rational(static_cast<std::int64_t>(xs.size())) > eps * Rational(8));
    REQUIRE(Rational(static_cast<std::int64_t>(ys.size())) > eps * Rational(8));
    Bitset xm = Bitset::of(16, xs);
    Bitset ym = Bitset::of(16, ys);
    Rational dev = density(g, xm, ym) - density(g, a, b);
    if (dev < Rational(0)) dev = Rational(0) - dev;
    REQUIRE_FALSE(dev < eps);
}

TEST_CASE("exact checker agrees with subset enumeration on small pairs") {
    Rng rng(71);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int na = 3 + static_cast<int>(rng.below(4));  // 3..6
        int nb = 3 + static_cast<int>(rng.below(4));
        int pnum = 1 + static_cast<int>(rng.below(9));
        Graph g = random_bipartite_host(na, nb, pnum, 10, rng);
        std::vector<int> av, bv;
        for (int i = 0; i < na; ++i) av.push_back(i);
        for (int i = 0; i < nb; ++i) bv.push_back(na + i);
        Bitset am = Bitset::of(static_cast<std::size_t>(na + nb), av);
        Bitset bm = Bitset::of(static_cast<std::size_t>(na + nb), bv);
        for (const char* e : {"0.2", "0.35", "0.5"}) {
            Rational eps = Rational::from_decimal(e);
            auto rep = check_regularity(g, am, bm, eps);
            REQUIRE(rep.checked_exactly);
            REQUIRE(rep.verdict == naive_regular(g, av, bv, eps));
            ++checked;
        }
    }
    REQUIRE(checked == 120);
}

TEST_CASE("irregular witnesses from the exact checker always verify") {
    Rng rng(113);
    for (int trial = 0; trial < 25; ++trial) {
        int na = 4 + static_cast<int>(rng.below(5));  // 4..8
        int nb = 4 + static_cast<int>(rng.below(5));
        Graph g = random_bipartite_host(na, nb, 1 + static_cast<int>(rng.below(9)), 10, rng);
        std::vector<int> av, bv;
        for (int i = 0; i < na; ++i) av.push_back(i);
        for (int i = 0; i < nb; ++i) bv.push_back(na + i);
        Bitset am = Bitset::of(static_cast<std::size_t>(na + nb), av);
        Bitset bm = Bitset::of(static_cast<std::size_t>(na + nb), bv);
        Rational eps(1, 4);
        auto rep = check_regularity(g, am, bm, eps);
        if (rep.verdict != Verdict::Irregular) continue;
        REQUIRE(rep.witness.has_value());
        Bitset xm = Bitset::of(static_cast<std::size_t>(na + nb), rep.witness->first);
        Bitset ym = Bitset::of(static_cast<std::size_t>(na + nb), rep.witness->second);
        REQUIRE(xm.is_subset_of(am));
        REQUIRE(ym.is_subset_of(bm));
        Rational dev = density(g, xm, ym) - density(g, am, bm);
        if (dev < Rational(0)) dev = Rational(0) - dev;
        REQUIRE_FALSE(dev < eps);
    }
}

TEST_CASE("large sides fall back to the heuristic checker") {
    Rng rng(5);
    Graph g = random_bipartite_host(20, 20, 1, 2, rng);
    std::vector<int> av, bv;
    for (int i = 0; i < 20; ++i) av.push_back(i);
    for (int i = 0; i < 20; ++i) bv.push_back(20 + i);
    Bitset am = Bitset::of(40, av);
    Bitset bm = Bitset::of(40, bv);
    auto rep = check_regularity(g, am, bm, Rational(1, 4), 9);
    REQUIRE_FALSE(rep.checked_exactly);
    // the heuristic can refute but never certify
    REQUIRE(rep.verdict != Verdict::Regular);
    if (rep.verdict == Verdict::Irregular) REQUIRE(rep.witness.has_value());
}

TEST_CASE("heuristic finds the witness in a half-empty pair") {
    // left half of A sees everything, right half sees nothing
    Graph g(40);
    for (int u = 0; u < 10; ++u)
        for (int v = 20; v < 40; ++v) g.add_edge(u, v);
    Bitset am(40), bm(40);
    for (int i = 0; i < 20; ++i) am.set(static_cast<std::size_t>(i));
    for (int i = 20; i < 40; ++i) bm.set(static_cast<std::size_t>(i));
    auto rep = check_regularity_heuristic(g, am, bm, Rational(1, 4), 17, 16);
    REQUIRE(rep.verdict == Verdict::Irregular);
    REQUIRE(rep.witness.has_value());
    Bitset xm = Bitset::of(40, rep.witness->first);
    Bitset ym = Bitset::of(40, rep.witness->second);
    Rational dev = density(g, xm, ym) - density(g, am, bm);
    if (dev < Rational(0)) dev = Rational(0) - dev;
    REQUIRE_FALSE(dev < Rational(1, 4));
}

TEST_CASE("super-regularity separates degree failures from density failures") {
    Graph g = Graph::complete_bipartite(6, 6);
    Bitset a = Bitset::of(12, {0, 1, 2, 3, 4, 5});
    Bitset b = Bitset::of(12, {6, 7, 8, 9, 10, 11});
    auto good = check_super_regular(g, a, b, Rational(1, 4), Rational(1, 2), Rational(1, 4));
    REQUIRE(good.ok());
    REQUIRE(good.pair_density == Rational(1));

    // cut one vertex down to a single neighbour: min-degree condition dies
    Graph h = Graph::complete_bipartite(6, 6);
    Graph h2(12);
    for (int u = 0; u < 6; ++u)
        for (int v = 6; v < 12; ++v)
            if (u != 0 || v == 6) h2.add_edge(u, v);
    auto bad = check_super_regular(h2, a, b, Rational(1, 4), Rational(1, 2), Rational(1, 2));
    REQUIRE_FALSE(bad.degree_ok_a);
    REQUIRE(bad.deficient_vertex.has_value());
    REQUIRE(*bad.deficient_vertex == 0);
    REQUIRE_FALSE(bad.ok());
}

TEST_CASE("slice parameters") {
    auto sp = slice_params(Rational(1, 4), Rational(1, 2), Rational(1, 2));
    REQUIRE(sp.eps_prime == Rational(1, 2));
    REQUIRE(sp.d_low == Rational(1, 4));
    REQUIRE(sp.d_high == Rational(3, 4));

    // beta close to 1 keeps the doubled-eps branch
    auto sp2 = slice_params(Rational(1, 10), Rational(1, 2), Rational(9, 10));
    REQUIRE(sp2.eps_prime == Rational(1, 5));

    REQUIRE_THROWS_AS(slice_params(Rational(1, 2), Rational(1, 2), Rational(1, 4)),
                      precondition_error);
}
