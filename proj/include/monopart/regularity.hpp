#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monopart/colored_graph.hpp"
#include "monopart/graph.hpp"
#include "monopart/rational.hpp"
#include "monopart/rng.hpp"

namespace monopart {

// Exact subset enumeration is feasible only up to this many vertices per side.
inline constexpr int kExactCheckCap = 12;

struct VertexPair {
    const Graph* host = nullptr;
    Bitset a, b;

    VertexPair(const Graph& g, Bitset a_, Bitset b_) : host(&g), a(std::move(a_)), b(std::move(b_)) {
        if (a.size_bits() != static_cast<std::size_t>(g.vertex_count()) ||
            b.size_bits() != static_cast<std::size_t>(g.vertex_count()))
            throw precondition_error("VertexPair: mask size mismatch");
        if (a.intersects(b)) throw precondition_error("VertexPair: sides not disjoint");
        if (a.none() || b.none()) throw precondition_error("VertexPair: empty side");
    }
};

inline long edges_between(const Graph& g, const Bitset& a, const Bitset& b) {
    long e = 0;
    for (std::size_t v = a.find_first(); v != Bitset::npos; v = a.find_next(v))
        e += g.degree_in(static_cast<int>(v), b);
    return e;
}

// d(A,B) = e(A,B) / (|A| |B|), exact
inline Rational density(const Graph& g, const Bitset& a, const Bitset& b) {
    if (a.none() || b.none()) throw precondition_error("density: empty side");
    if (a.intersects(b)) throw precondition_error("density: sides not disjoint");
    long e = edges_between(g, a, b);
    return Rational(e, static_cast<std::int64_t>(a.count()) * static_cast<std::int64_t>(b.count()));
}

inline Rational density(const VertexPair& p) { return density(*p.host, p.a, p.b); }

enum class Verdict { Regular, Irregular, Unknown };

struct RegularityVerdict {
    Verdict verdict = Verdict::Unknown;
    bool checked_exactly = false;
    // populated for Irregular: sub-pair (X, Y) with |X| > eps|A|, |Y| > eps|B|
    // whose density deviates from d(A,B) by at least eps
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

namespace detail {

// |e/(x y) - E/(ab)| >= eps, all integer
inline bool deviates(long e, long x, long y, long E, long ab, const Rational& eps) {
    __int128 lhs = static_cast<__int128>(e) * ab - static_cast<__int128>(E) * x * y;
    if (lhs < 0) lhs = -lhs;
    lhs *= eps.den();
    __int128 rhs = static_cast<__int128>(eps.num()) * x * y * ab;
    return lhs >= rhs;
}

// smallest subset size strictly above eps * side
inline int min_subset_size(int side, const Rational& eps) {
    // smallest s with s * den > num * side
    std::int64_t t = eps.num() * side;
    std::int64_t s = t / eps.den() + 1;
    if (s < 1) s = 1;
    return static_cast<int>(s);
}

}  // namespace detail

// Definition check by full enumeration of sub-pairs. Decisive: returns
// Regular or Irregular (with witness), never Unknown. Sides above
// kExactCheckCap are rejected; large pairs can only be refuted, not certified.
inline RegularityVerdict check_regularity_exact(const Graph& g, const Bitset& a, const Bitset& b,
                                                const Rational& eps) {
    std::vector<int> va = a.to_vector(), vb = b.to_vector();
    int na = static_cast<int>(va.size()), nb = static_cast<int>(vb.size());
    if (na == 0 || nb == 0) throw precondition_error("check_regularity_exact: empty side");
    if (a.intersects(b)) throw precondition_error("check_regularity_exact: sides not disjoint");
    if (na > kExactCheckCap || nb > kExactCheckCap)
        throw size_error("check_regularity_exact: side exceeds exact cap");
    if (eps.num() <= 0) throw precondition_error("check_regularity_exact: eps must be positive");

    long E = edges_between(g, a, b);
    long ab = static_cast<long>(na) * nb;

    // adjacency of each b-vertex as a mask over positions in va
    std::vector<std::uint32_t> amask(static_cast<std::size_t>(nb), 0);
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < na; ++i)
            if (g.adjacent(vb[static_cast<std::size_t>(j)], va[static_cast<std::size_t>(i)]))
                amask[static_cast<std::size_t>(j)] |= (1u << i);

    int min_x = detail::min_subset_size(na, eps);
    int min_y = detail::min_subset_size(nb, eps);

    std::vector<int> cnt(static_cast<std::size_t>(nb));
    std::vector<std::uint16_t> esum(std::size_t{1} << nb);
    const std::uint32_t xmax = (na >= 31) ? 0 : (1u << na);  // na <= 12
    const std::uint32_t ymax = 1u << nb;

    for (std::uint32_t X = 1; X < xmax; ++X) {
        int x = std::popcount(X);
        if (x < min_x) continue;
        for (int j = 0; j < nb; ++j)
            cnt[static_cast<std::size_t>(j)] = std::popcount(amask[static_cast<std::size_t>(j)] & X);
        esum[0] = 0;
        for (std::uint32_t Y = 1; Y < ymax; ++Y) {
            std::uint32_t low = Y & (Y - 1);
            int j = std::countr_zero(Y);
            esum[Y] = static_cast<std::uint16_t>(esum[low] + cnt[static_cast<std::size_t>(j)]);
            int y = std::popcount(Y);
            if (y < min_y) continue;
            if (detail::deviates(esum[Y], x, y, E, ab, eps)) {
                std::vector<int> wx, wy;
                for (int i = 0; i < na; ++i)
                    if (X & (1u << i)) wx.push_back(va[static_cast<std::size_t>(i)]);
                for (int i = 0; i < nb; ++i)
                    if (Y & (1u << i)) wy.push_back(vb[static_cast<std::size_t>(i)]);
                return {Verdict::Irregular, true, std::make_pair(std::move(wx), std::move(wy))};
            }
        }
    }
    return {Verdict::Regular, true, std::nullopt};
}

// Randomized refutation attempt: sampled sub-pairs plus greedy single-vertex
// moves towards larger deviation. Returns Irregular with a valid witness or
// Unknown; a heuristic can never certify regularity.
inline RegularityVerdict check_regularity_heuristic(const Graph& g, const Bitset& a, const Bitset& b,
                                                    const Rational& eps, std::uint64_t seed = 0,
                                                    int trials = 16) {
    std::vector<int> va = a.to_vector(), vb = b.to_vector();
    int na = static_cast<int>(va.size()), nb = static_cast<int>(vb.size());
    if (na == 0 || nb == 0) throw precondition_error("check_regularity_heuristic: empty side");
    if (eps.num() <= 0) throw precondition_error("check_regularity_heuristic: eps must be positive");

    long E = edges_between(g, a, b);
    long ab = static_cast<long>(na) * nb;
    int min_x = detail::min_subset_size(na, eps);
    int min_y = detail::min_subset_size(nb, eps);
    if (min_x > na || min_y > nb) return {Verdict::Unknown, false, std::nullopt};

    Rng rng(derive_seed(seed, 0x5eC7));

    auto dev_num = [&](long e, long x, long y) {
        __int128 v = static_cast<__int128>(e) * ab - static_cast<__int128>(E) * x * y;
        if (v < 0) v = -v;
        return v;  // deviation * (x y ab); compare via cross-multiplication
    };
    // deviation(e1,x1,y1) > deviation(e2,x2,y2) ?
    auto dev_greater = [&](long e1, long x1, long y1, long e2, long x2, long y2) {
        return dev_num(e1, x1, y1) * (static_cast<__int128>(x2) * y2) >
               dev_num(e2, x2, y2) * (static_cast<__int128>(x1) * y1);
    };

    std::vector<char> inx(static_cast<std::size_t>(na)), iny(static_cast<std::size_t>(nb));
    for (int t = 0; t < trials; ++t) {
        // random admissible sizes, random subsets
        int sx = static_cast<int>(rng.range(min_x, na));
        int sy = static_cast<int>(rng.range(min_y, nb));
        std::vector<int> pa(va), pb(vb);
        rng.shuffle(pa);
        rng.shuffle(pb);
        pa.resize(static_cast<std::size_t>(sx));
        pb.resize(static_cast<std::size_t>(sy));
        Bitset X = Bitset::of(a.size_bits(), pa), Y = Bitset::of(b.size_bits(), pb);
        long x = sx, y = sy;
        long e = edges_between(g, X, Y);

        // greedy: toggle single vertices while the deviation grows
        bool improved = true;
        int steps = 0;
        while (improved && steps++ < 4 * (na + nb)) {
            improved = false;
            for (int i = 0; i < na && !improved; ++i) {
                int v = va[static_cast<std::size_t>(i)];
                bool member = X.test(static_cast<std::size_t>(v));
                long nx = member ? x - 1 : x + 1;
                if (nx < min_x || nx > na) continue;
                long de = g.degree_in(v, Y);
                long ne = member ? e - de : e + de;
                if (dev_greater(ne, nx, y, e, x, y)) {
                    if (member) X.reset(static_cast<std::size_t>(v)); else X.set(static_cast<std::size_t>(v));
                    x = nx; e = ne; improved = true;
                }
            }
            for (int j = 0; j < nb && !improved; ++j) {
                int v = vb[static_cast<std::size_t>(j)];
                bool member = Y.test(static_cast<std::size_t>(v));
                long ny = member ? y - 1 : y + 1;
                if (ny < min_y || ny > nb) continue;
                long de = g.degree_in(v, X);
                long ne = member ? e - de : e + de;
                if (dev_greater(ne, x, ny, e, x, y)) {
                    if (member) Y.reset(static_cast<std::size_t>(v)); else Y.set(static_cast<std::size_t>(v));
                    y = ny; e = ne; improved = true;
                }
            }
        }
        if (detail::deviates(e, x, y, E, ab, eps))
            return {Verdict::Irregular, false, std::make_pair(X.to_vector(), Y.to_vector())};
    }
    return {Verdict::Unknown, false, std::nullopt};
}

// Routes to the exact check when both sides fit the cap, else the heuristic.
inline RegularityVerdict check_regularity(const Graph& g, const Bitset& a, const Bitset& b,
                                          const Rational& eps, std::uint64_t seed = 0) {
    if (a.count() <= kExactCheckCap && b.count() <= kExactCheckCap)
        return check_regularity_exact(g, a, b, eps);
    return check_regularity_heuristic(g, a, b, eps, seed);
}

// (eps, d, delta)-super-regularity: eps-regular, density at least d, and
// every vertex sees at least delta * |other side| of the other side.
struct SuperRegularReport {
    RegularityVerdict regularity;
    Rational pair_density{0};
    bool density_ok = false;
    bool degree_ok_a = false;
    bool degree_ok_b = false;
    std::optional<int> deficient_vertex;

    // true when nothing is refuted and every decidable condition holds
    bool ok() const {
        return regularity.verdict != Verdict::Irregular && density_ok && degree_ok_a && degree_ok_b;
    }
};

inline SuperRegularReport check_super_regular(const Graph& g, const Bitset& a, const Bitset& b,
                                              const Rational& eps, const Rational& d,
                                              const Rational& delta, std::uint64_t seed = 0) {
    SuperRegularReport rep;
    rep.regularity = check_regularity(g, a, b, eps, seed);
    rep.pair_density = density(g, a, b);
    rep.density_ok = rep.pair_density >= d;
    auto degrees_ok = [&](const Bitset& from, const Bitset& to) -> std::optional<int> {
        std::int64_t sz = static_cast<std::int64_t>(to.count());
        for (std::size_t v = from.find_first(); v != Bitset::npos; v = from.find_next(v)) {
            // deg(v, to) >= delta * |to|
            std::int64_t deg = g.degree_in(static_cast<int>(v), to);
            if (deg * delta.den() < delta.num() * sz) return static_cast<int>(v);
        }
        return std::nullopt;
    };
    auto bad_a = degrees_ok(a, b);
    auto bad_b = degrees_ok(b, a);
    rep.degree_ok_a = !bad_a.has_value();
    rep.degree_ok_b = !bad_b.has_value();
    rep.deficient_vertex = bad_a ? bad_a : bad_b;
    return rep;
}

struct SliceParams {
    Rational eps_prime;
    Rational d_low, d_high;  // open interval around the source density
};

// Parameters surviving a slice: sub-pairs keeping at least a beta fraction of
// each side of an (eps, d, 0)-super-regular pair are (eps', d', 0)-super-regular
// with eps' = max(eps/beta, 2 eps) and |d' - d| < eps.
inline SliceParams slice_params(const Rational& eps, const Rational& d, const Rational& beta) {
    if (!(beta > eps)) throw precondition_error("slice_params: beta must exceed eps");
    if (eps.num() <= 0) throw precondition_error("slice_params: eps must be positive");
    Rational stretched = eps / beta;
    Rational doubled = eps * Rational(2);
    return {stretched > doubled ? stretched : doubled, d - eps, d + eps};
}

}  // namespace monopart
