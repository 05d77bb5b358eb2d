#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "monopart/rational.hpp"

namespace monopart {

// Knobs for the partition pipeline. Defaults are the practical operating
// point; delta and k are resolved from the family degree bound when unset.
struct PipelineParams {
    Rational epsilon{1, 4};
    Rational d{1, 2};
    std::optional<Rational> delta;
    std::optional<int> k;

    int piece_budget = 4096;
    int min_part = 8;
    int small_n_threshold = 8;
    int oracle_cap = 12;

    long search_time_limit_ms = 5000;
    long embed_node_budget = 200000;
    int embed_restarts = 4;
    int cylinder_attempts = 32;
    int regularity_trials = 8;
    Rational extraction_ratio{1, 4};

    std::uint64_t seed = 0;
    bool theoretical_mode = false;

    Rational resolved_delta(int max_deg) const {
        if (delta) return *delta;
        if (max_deg < 1) return Rational(1, 2);
        return Rational(1, 2 * static_cast<long long>(max_deg));
    }

    int resolved_k(int max_deg, bool bipartite_mode = false) const {
        if (k) return *k;
        if (bipartite_mode) return 3;
        return max_deg + 2;
    }

    // advisory time limit expressed as a deterministic node budget
    long nodes_for_time_limit() const { return 40 * search_time_limit_ms; }
};

// Parameter choices the existence proof would use, as text. Purely
// documentary: epsilon there shrinks like 2^(-c*Delta) with an absolute
// constant c and is far below anything a finite run can certify.
inline std::string theoretical_parameters(int max_deg) {
    int k = max_deg + 2;
    long long pieces = 1;
    for (int i = 0; i < 2 * k && pieces < (1LL << 62); ++i) pieces *= 2;
    std::string s;
    s += "theoretical parameters for maximum degree " + std::to_string(max_deg) + ":\n";
    s += "  k       = Delta + 2 = " + std::to_string(k) + "\n";
    s += "  delta   = 1/(2*Delta) = 1/" + std::to_string(2 * std::max(1, max_deg)) + "\n";
    s += "  epsilon = 2^(-c*Delta), c an absolute constant\n";
    s += "  eta     = 2^(-2k-1) * (epsilon/2)^( 2^(4k) * (epsilon/2)^(-5) )\n";
    s += "  requires n >= 2^(2k) = " + std::to_string(pieces) + "\n";
    return s;
}

}  // namespace monopart
