#pragma once

#include <cstdint>
#include <vector>

namespace monopart {

// All randomness flows from one user seed through derive() with fixed salts,
// so independent stages get independent streams and every run is reproducible
// bit-for-bit on any platform (no std::uniform_int_distribution, whose output
// is implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed ^ 0x2545f4914f6cdd1dULL) {
        // warm up so near-zero seeds decorrelate
        next();
        next();
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, bound), bound > 0; rejection keeps it unbiased
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (-bound) % bound;
        while (true) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [lo, hi] inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // true with probability num/den, exactly
    bool chance(std::int64_t num, std::int64_t den) {
        if (num <= 0) return false;
        if (num >= den) return true;
        return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    Rng split(std::uint64_t salt) { return Rng(derive_seed(state_, salt)); }

private:
    std::uint64_t state_;
};

}  // namespace monopart
