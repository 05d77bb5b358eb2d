#pragma once

#include <cstdint>
#include <functional>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "monopart/equitable.hpp"
#include "monopart/graph.hpp"
#include "monopart/rng.hpp"

namespace monopart {

// How a reduced member reconstructs its source: the source member had
// source_n vertices, `kept` survive (ascending; reduced label i = position),
// `removed` is the deleted independent class, and glue_edges are the source
// edges between kept and removed, as (reduced label, index into removed).
struct MinusClassData {
    int source_n = 0;
    std::vector<int> kept;
    std::vector<int> removed;
    std::vector<std::pair<int, int>> glue_edges;
};

// Consecutive label blocks of a doubled member, each a member of the base
// family of the given size.
struct DoubledDecomposition {
    struct Block {
        int offset;
        int size;
    };
    std::vector<Block> blocks;
};

struct FamilyMember {
    Graph graph;
    std::shared_ptr<const MinusClassData> minus;
    std::shared_ptr<const DoubledDecomposition> doubled;
};

// A graph family: one member per positive size, bounded maximum degree.
// Members are generated on demand, memoized, and validated at generation
// (size, degree bound, 2-colorability when the bipartite flag is set).
class GraphFamily {
public:
    GraphFamily() = default;

    const std::string& name() const { return impl_->name; }
    int max_degree() const { return impl_->max_degree; }
    bool bipartite() const { return impl_->bipartite; }
    // number of classes an equitable proper coloring of every member needs
    int chi() const { return impl_->chi; }

    const FamilyMember& member_data(int n) const {
        if (n <= 0) throw precondition_error("GraphFamily: member size must be positive");
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->memo.find(n);
        if (it != impl_->memo.end()) return *it->second;
        auto mem = std::make_shared<FamilyMember>(impl_->gen(n));
        if (mem->graph.vertex_count() != n)
            throw unsupported_error("GraphFamily '" + impl_->name + "': generator produced wrong size");
        if (mem->graph.max_degree() > impl_->max_degree)
            throw unsupported_error("GraphFamily '" + impl_->name + "': degree bound violated");
        if (impl_->bipartite && !bipartition(mem->graph))
            throw unsupported_error("GraphFamily '" + impl_->name + "': member not 2-colorable");
        auto [pos, inserted] = impl_->memo.emplace(n, std::move(mem));
        (void)inserted;
        return *pos->second;
    }

    const Graph& member(int n) const { return member_data(n).graph; }

    static GraphFamily paths() {
        return make("paths", 2, true, 2, [](int n) { return FamilyMember{Graph::path(n), nullptr, nullptr}; });
    }

    static GraphFamily cycles() {
        return make("cycles", 2, false, 3, [](int n) { return FamilyMember{Graph::cycle(n), nullptr, nullptr}; });
    }

    static GraphFamily cycle_power(int k) {
        if (k < 1) throw precondition_error("cycle_power family: k must be >= 1");
        return make("cycle_power(" + std::to_string(k) + ")", 2 * k, false, 2 * k + 1,
                    [k](int n) { return FamilyMember{Graph::cycle_power(n, k), nullptr, nullptr}; });
    }

    static GraphFamily matchings() {
        return make("matchings", 1, true, 2,
                    [](int n) { return FamilyMember{Graph::matching(n), nullptr, nullptr}; });
    }

    static GraphFamily random_bounded(int max_deg, std::uint64_t seed) {
        if (max_deg < 1) throw precondition_error("random_bounded family: max degree must be >= 1");
        std::string nm = "random_bounded(" + std::to_string(max_deg) + "," + std::to_string(seed) + ")";
        return make(nm, max_deg, false, max_deg + 1, [max_deg, seed](int n) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
            Graph g(n);
            std::vector<int> deg(static_cast<std::size_t>(n), 0);
            for (int t = 0; t < 4 * n * max_deg; ++t) {
                int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                if (u == v || g.adjacent(u, v)) continue;
                if (deg[static_cast<std::size_t>(u)] >= max_deg || deg[static_cast<std::size_t>(v)] >= max_deg)
                    continue;
                g.add_edge(u, v);
                ++deg[static_cast<std::size_t>(u)];
                ++deg[static_cast<std::size_t>(v)];
            }
            return FamilyMember{std::move(g), nullptr, nullptr};
        });
    }

    // Family certifying that piece counts must grow with Delta: members are
    // built so that every smaller member is a labeled subgraph of every larger
    // one. Sizes 2^i double up a fresh random near-regular bipartite block;
    // in-between sizes append isolated vertices.
    static GraphFamily lower_bound(int max_deg, std::uint64_t base_seed);

    static GraphFamily from_directory(const std::string& dir);

    friend GraphFamily family_minus_class(const GraphFamily& fam, int chi);
    friend GraphFamily doubled_family(const GraphFamily& fam);

private:
    struct Impl {
        std::string name;
        int max_degree = 0;
        bool bipartite = false;
        int chi = 1;
        std::function<FamilyMember(int)> gen;
        std::mutex mu;
        std::map<int, std::shared_ptr<const FamilyMember>> memo;
        std::shared_ptr<const Impl> base;  // keeps derived families' sources alive
    };

    static GraphFamily make(std::string name, int max_degree, bool bip, int chi,
                            std::function<FamilyMember(int)> gen,
                            std::shared_ptr<const Impl> base = nullptr) {
        GraphFamily f;
        f.impl_ = std::make_shared<Impl>();
        f.impl_->name = std::move(name);
        f.impl_->max_degree = max_degree;
        f.impl_->bipartite = bip;
        f.impl_->chi = chi;
        f.impl_->gen = std::move(gen);
        f.impl_->base = std::move(base);
        return f;
    }

    std::shared_ptr<Impl> impl_;
};

namespace detail {

// random bipartite graph on floor(n/2) + ceil(n/2) vertices, every degree at
// most max_deg and as close to it as repeated random matchings manage
inline Graph near_regular_bipartite(int n, int max_deg, std::uint64_t seed) {
    Graph g(n);
    int left = n / 2;
    int right = n - left;
    if (left == 0 || right == 0) return g;
    Rng rng(seed);
    std::vector<int> ls(static_cast<std::size_t>(left)), rs(static_cast<std::size_t>(right));
    for (int i = 0; i < left; ++i) ls[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < right; ++i) rs[static_cast<std::size_t>(i)] = left + i;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    int lanes = std::max(left, right);
    for (int round = 0; round < max_deg; ++round) {
        rng.shuffle(ls);
        rng.shuffle(rs);
        for (int i = 0; i < lanes; ++i) {
            int u = ls[static_cast<std::size_t>(i % left)];
            int v = rs[static_cast<std::size_t>(i % right)];
            if (g.adjacent(u, v)) continue;
            if (deg[static_cast<std::size_t>(u)] >= max_deg || deg[static_cast<std::size_t>(v)] >= max_deg)
                continue;
            g.add_edge(u, v);
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
        }
    }
    return g;
}

inline Graph lower_bound_graph(int n, int max_deg, std::uint64_t base_seed) {
    if (n == 1) return Graph(1);
    int p = 1;
    while (2 * p <= n) p *= 2;
    if (n == p) {
        Graph head = lower_bound_graph(p / 2, max_deg, base_seed);
        Graph block = near_regular_bipartite(
            p / 2, max_deg, derive_seed(base_seed, 0xB10C + static_cast<std::uint64_t>(p / 2)));
        return Graph::disjoint_union(head, block);
    }
    return Graph::disjoint_union(lower_bound_graph(p, max_deg, base_seed), Graph::edgeless(n - p));
}

}  // namespace detail

inline GraphFamily GraphFamily::lower_bound(int max_deg, std::uint64_t base_seed) {
    if (max_deg < 1) throw precondition_error("lower_bound family: max degree must be >= 1");
    std::string nm = "lower_bound(" + std::to_string(max_deg) + "," + std::to_string(base_seed) + ")";
    return make(nm, max_deg, true, 2, [max_deg, base_seed](int n) {
        return FamilyMember{detail::lower_bound_graph(n, max_deg, base_seed), nullptr, nullptr};
    });
}

inline GraphFamily GraphFamily::from_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw precondition_error("family directory not found: " + dir);
    std::map<int, Graph> members;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string fname = entry.path().filename().string();
        if (fname.size() < 8 || fname.substr(0, 1) != "F" || fname.substr(fname.size() - 6) != ".edges")
            continue;
        int n = 0;
        try {
            n = std::stoi(fname.substr(1, fname.size() - 7));
        } catch (...) {
            continue;
        }
        std::ifstream in(entry.path());
        if (!in) throw parse_error("cannot open " + entry.path().string());
        int filed_n = 0;
        long m = 0;
        if (!(in >> filed_n >> m)) throw parse_error("bad header in " + fname, 1);
        if (filed_n != n) throw parse_error("size in header disagrees with filename in " + fname, 1);
        Graph g(n);
        for (long i = 0; i < m; ++i) {
            int u = 0, v = 0;
            if (!(in >> u >> v)) throw parse_error("missing edge in " + fname, i + 2);
            if (u < 1 || u > n || v < 1 || v > n || u == v)
                throw parse_error("bad edge endpoints in " + fname, i + 2);
            g.add_edge(u - 1, v - 1);
        }
        members.emplace(n, std::move(g));
    }
    if (members.empty()) throw precondition_error("family directory has no F<n>.edges files: " + dir);
    int max_deg = 0;
    bool bip = true;
    for (const auto& [n, g] : members) {
        max_deg = std::max(max_deg, g.max_degree());
        if (!bipartition(g)) bip = false;
    }
    auto shared = std::make_shared<std::map<int, Graph>>(std::move(members));
    return make(dir, max_deg, bip, max_deg + 1, [shared, dir](int n) {
        auto it = shared->find(n);
        if (it == shared->end())
            throw precondition_error("family directory " + dir + " has no member of size " +
                                     std::to_string(n));
        return FamilyMember{it->second, nullptr, nullptr};
    });
}

// The family of members with one equitable color class deleted. member(m)
// comes from fam's member on ceil(chi*m/(chi-1)) vertices minus a class of
// size ceil(m/(chi-1)); the removed class and its edges are retained so the
// deletion can be undone by re-embedding the class elsewhere.
inline GraphFamily family_minus_class(const GraphFamily& fam, int chi) {
    if (chi < 2) throw precondition_error("family_minus_class: chi must be >= 2");
    GraphFamily base = fam;
    return GraphFamily::make(
        "minus(" + fam.name() + ")", fam.max_degree(), chi - 1 <= 2, chi - 1,
        [base, chi](int m) {
            int source_n = (chi * m + chi - 2) / (chi - 1);
            int removed_size = source_n - m;
            const Graph& src = base.member(source_n);

            EquitableColoring coloring;
            if (chi > src.max_degree()) {
                coloring = equitable_color(src, chi);
            } else if (chi == 2) {
                auto bp = equitable_bipartition(src);
                if (!bp)
                    throw unsupported_error("family_minus_class: no equitable 2-coloring of member of " +
                                            base.name());
                coloring = *bp;
            } else {
                throw unsupported_error(
                    "family_minus_class: chi below max_degree+1 is only supported for chi = 2");
            }

            int pick = -1;
            for (std::size_t c = 0; c < coloring.classes.size(); ++c)
                if (static_cast<int>(coloring.classes[c].size()) == removed_size) {
                    pick = static_cast<int>(c);
                    break;
                }
            if (pick < 0)
                throw unsupported_error("family_minus_class: no class of the required size");

            auto data = std::make_shared<MinusClassData>();
            data->source_n = source_n;
            data->removed = coloring.classes[static_cast<std::size_t>(pick)];
            std::vector<char> is_removed(static_cast<std::size_t>(source_n), 0);
            for (int v : data->removed) is_removed[static_cast<std::size_t>(v)] = 1;
            for (int v = 0; v < source_n; ++v)
                if (!is_removed[static_cast<std::size_t>(v)]) data->kept.push_back(v);

            Graph reduced(m);
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (src.adjacent(data->kept[static_cast<std::size_t>(i)], data->kept[static_cast<std::size_t>(j)]))
                        reduced.add_edge(i, j);
            for (int i = 0; i < m; ++i)
                for (std::size_t j = 0; j < data->removed.size(); ++j)
                    if (src.adjacent(data->kept[static_cast<std::size_t>(i)], data->removed[j]))
                        data->glue_edges.emplace_back(i, static_cast<int>(j));

            return FamilyMember{std::move(reduced), std::move(data), nullptr};
        },
        fam.impl_);
}

// Doubles a bipartite family so every member splits into two (almost) equal
// base members plus possibly a single vertex; the resulting members always
// admit equitable proper 2-colorings.
inline GraphFamily doubled_family(const GraphFamily& fam) {
    if (!fam.bipartite())
        throw precondition_error("doubled_family: base family must be bipartite");
    GraphFamily base = fam;
    return GraphFamily::make(
        "doubled(" + fam.name() + ")", fam.max_degree(), true, 2,
        [base](int n) {
            auto decomp = std::make_shared<DoubledDecomposition>();
            Graph g(0);
            auto append = [&](int size) {
                decomp->blocks.push_back({g.vertex_count(), size});
                g = Graph::disjoint_union(g, base.member(size));
            };
            if (n == 1) {
                append(1);
            } else if (n % 2 == 0) {
                append(n / 2);
                append(n / 2);
            } else {
                append((n - 1) / 2);
                append((n - 1) / 2);
                append(1);
            }
            return FamilyMember{std::move(g), nullptr, std::move(decomp)};
        },
        fam.impl_);
}

// Parses "paths", "cycles", "matchings", "cycle_power:K", "random_bounded:D:SEED".
inline GraphFamily builtin_family(const std::string& spec) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        return parts;
    };
    auto parts = split(spec);
    const std::string& head = parts[0];
    if (head == "paths" && parts.size() == 1) return GraphFamily::paths();
    if (head == "cycles" && parts.size() == 1) return GraphFamily::cycles();
    if (head == "matchings" && parts.size() == 1) return GraphFamily::matchings();
    if (head == "cycle_power" && parts.size() == 2) return GraphFamily::cycle_power(std::stoi(parts[1]));
    if (head == "random_bounded" && parts.size() == 3)
        return GraphFamily::random_bounded(std::stoi(parts[1]), std::stoull(parts[2]));
    throw precondition_error("unknown family spec: " + spec);
}

}  // namespace monopart
