#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "monopart/colored_graph.hpp"
#include "monopart/embedding.hpp"
#include "monopart/family.hpp"
#include "monopart/io.hpp"
#include "monopart/ramsey_cover.hpp"

using namespace monopart;

namespace {

Bitset full_region(int n) {
    Bitset b(static_cast<std::size_t>(n));
    b.set_all();
    return b;
}

bool mono_triangle_exists(const ColoredCompleteGraph& g) {
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (g.color(a, b) == g.color(b, c) && g.color(b, c) == g.color(a, c)) return true;
    return false;
}

}  // namespace

TEST_CASE("find_mono_copy tries red before blue") {
    ColoredCompleteGraph g(Graph::complete(6));  // everything red
    auto copy = find_mono_copy(g, full_region(6), Graph::cycle(4), Graph::cycle(4), 100000);
    REQUIRE(copy.has_value());
    REQUIRE(copy->color == Color::Red);
    REQUIRE(check_embedding(Graph::cycle(4), g.view(Color::Red), copy->map));

    ColoredCompleteGraph b(Graph::edgeless(6));
    auto bc = find_mono_copy(b, full_region(6), Graph::cycle(4), Graph::cycle(4), 100000);
    REQUIRE(bc.has_value());
    REQUIRE(bc->color == Color::Blue);
}

TEST_CASE("find_mono_copy can use different patterns per color") {
    // red = K_{3,3}: triangle-free, so a red triangle fails but a red C4 works
    ColoredCompleteGraph g(Graph::complete_bipartite(3, 3));
    auto c4 = find_mono_copy(g, full_region(6), Graph::cycle(4), Graph::complete(5), 1000000);
    REQUIRE(c4.has_value());
    REQUIRE(c4->color == Color::Red);

    auto k3 = find_mono_copy(g, full_region(6), Graph::complete(3), Graph::complete(3), 1000000);
    REQUIRE(k3.has_value());
    REQUIRE(k3->color == Color::Blue);  // blue = two disjoint triangles
    REQUIRE(check_embedding(Graph::complete(3), g.view(Color::Blue), k3->map));
}

TEST_CASE("every 2-colored K6 has a mono triangle and the search finds it") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        ColoredCompleteGraph g = gen_random(6, Rational(1, 2), seed);
        REQUIRE(mono_triangle_exists(g));
        auto copy = find_mono_copy(g, full_region(6), Graph::complete(3), Graph::complete(3), 1000000);
        REQUIRE(copy.has_value());
        REQUIRE(check_embedding(Graph::complete(3), g.view(copy->color), copy->map));
    }
}

TEST_CASE("cover_most reduces the region below the target") {
    PipelineParams params;
    GraphFamily cycles = GraphFamily::cycles();
    for (std::uint64_t seed : {3ULL, 14ULL}) {
        ColoredCompleteGraph g = gen_random(60, Rational(1, 2), seed);
        auto res = cover_most(g, full_region(60), cycles, cycles, Rational(1, 10), params, 4096, seed);
        REQUIRE(static_cast<long>(res.leftovers.count()) * 10 <= 60);

        // pieces are disjoint, valid, and account for the removed vertices
        std::set<int> used;
        for (const auto& piece : res.pieces) {
            REQUIRE(check_embedding(cycles.member(piece.member_n), g.view(piece.color), piece.map));
            for (int v : piece.map) {
                REQUIRE(used.insert(v).second);
                REQUIRE_FALSE(res.leftovers.test(static_cast<std::size_t>(v)));
            }
        }
        REQUIRE(used.size() + res.leftovers.count() == 60);
    }
}

TEST_CASE("cover_most with eps zero empties the region") {
    PipelineParams params;
    GraphFamily m = GraphFamily::matchings();
    ColoredCompleteGraph g = gen_random(24, Rational(1, 3), 8);
    auto res = cover_most(g, full_region(24), m, m, Rational(0), params, 4096, 0);
    REQUIRE(res.leftovers.none());
}

TEST_CASE("cover_most respects a restricted region") {
    PipelineParams params;
    GraphFamily cycles = GraphFamily::cycles();
    ColoredCompleteGraph g = gen_random(30, Rational(1, 2), 5);
    Bitset region = Bitset::of(30, {0, 2, 4, 6, 8, 10, 12, 14, 16, 18});
    auto res = cover_most(g, region, cycles, cycles, Rational(1, 5), params, 4096, 1);
    for (const auto& piece : res.pieces)
        for (int v : piece.map) REQUIRE(region.test(static_cast<std::size_t>(v)));
    REQUIRE(res.leftovers.is_subset_of(region));
}

TEST_CASE("cover_most throws budget_error when the piece budget is too small") {
    PipelineParams params;
    GraphFamily m = GraphFamily::matchings();
    // an all-red K20 needs several matching pieces to get below 5 percent
    ColoredCompleteGraph g(Graph::complete(20));
    REQUIRE_THROWS_AS(cover_most(g, full_region(20), m, m, Rational(0), params, 1, 0), budget_error);
}

TEST_CASE("failed requests are halved until something fits") {
    PipelineParams params;
    // Paley coloring of K17: red iff the difference is a quadratic residue
    // mod 17. Neither color contains a K4, so the square-of-cycle family
    // (member(4) and up are complete graphs here) must shrink its requests.
    Graph red(17);
    bool qr[17] = {};
    for (int x = 1; x < 17; ++x) qr[(x * x) % 17] = true;
    for (int u = 0; u < 17; ++u)
        for (int v = u + 1; v < 17; ++v)
            if (qr[(v - u) % 17]) red.add_edge(u, v);
    ColoredCompleteGraph g(std::move(red));

    GraphFamily fam = GraphFamily::cycle_power(2);
    Bitset region(17);
    region.set_all();
    auto res = cover_most(g, region, fam, fam, Rational(1, 2), params, 4096, 3);
    REQUIRE(static_cast<long>(res.leftovers.count()) * 2 <= 17);
    bool halved = false;
    std::set<int> used;
    for (const auto& piece : res.pieces) {
        REQUIRE(piece.member_n <= 3);  // anything larger is a mono K4+
        if (piece.member_n <= 2) halved = true;
        REQUIRE(check_embedding(fam.member(piece.member_n), g.view(piece.color), piece.map));
        for (int v : piece.map) REQUIRE(used.insert(v).second);
    }
    REQUIRE(halved);
}

TEST_CASE("a two-vertex region is exhausted with singletons") {
    PipelineParams params;
    GraphFamily cycles = GraphFamily::cycles();
    ColoredCompleteGraph g(Graph::complete(40));
    Bitset region = Bitset::of(40, {7, 9});
    auto res = cover_most(g, region, cycles, cycles, Rational(0), params, 4096, 2);
    REQUIRE(res.leftovers.none());
    long total = 0;
    for (const auto& piece : res.pieces) total += piece.member_n;
    REQUIRE(total == 2);
}
