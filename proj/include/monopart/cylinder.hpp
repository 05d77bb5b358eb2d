#pragma once

#include <algorithm>
#include <vector>

#include "monopart/bitset.hpp"
#include "monopart/colored_graph.hpp"
#include "monopart/errors.hpp"
#include "monopart/rational.hpp"

namespace monopart {

// k disjoint vertex parts of one color class whose pairs are treated as
// super-regular with the stated parameters. Parts are kept sorted; empty
// parts are allowed (they arise transiently while covering).
struct Cylinder {
    std::vector<std::vector<int>> parts;
    Color color = Color::Red;
    Rational eps{1, 4};
    Rational d{1, 2};
    Rational delta{0};

    Cylinder() = default;
    Cylinder(std::vector<std::vector<int>> parts_, Color c, Rational eps_, Rational d_, Rational delta_)
        : parts(std::move(parts_)), color(c), eps(eps_), d(d_), delta(delta_) {
        if (parts.size() < 2) throw precondition_error("Cylinder: need at least 2 parts");
        std::vector<int> seen;
        for (auto& p : parts) {
            std::sort(p.begin(), p.end());
            if (std::adjacent_find(p.begin(), p.end()) != p.end())
                throw precondition_error("Cylinder: duplicate vertex within a part");
            for (int v : p) seen.push_back(v);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw precondition_error("Cylinder: parts overlap");
    }

    int k() const { return static_cast<int>(parts.size()); }

    int total_vertices() const {
        int t = 0;
        for (const auto& p : parts) t += static_cast<int>(p.size());
        return t;
    }

    std::vector<int> sizes() const {
        std::vector<int> s;
        s.reserve(parts.size());
        for (const auto& p : parts) s.push_back(static_cast<int>(p.size()));
        return s;
    }

    std::vector<int> all_vertices() const {
        std::vector<int> out;
        for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    // every part within factor (1 + alpha) of every other
    bool alpha_balanced(const Rational& alpha) const {
        int lo = parts[0].empty() ? 0 : static_cast<int>(parts[0].size());
        int hi = lo;
        for (const auto& p : parts) {
            lo = std::min(lo, static_cast<int>(p.size()));
            hi = std::max(hi, static_cast<int>(p.size()));
        }
        Rational bound = (Rational(1) + alpha) * Rational(lo);
        return Rational(hi) <= bound;
    }
};

}  // namespace monopart
