#pragma once

// Seeded randomness used by every stochastic stage. All draws go through
// the wrappers below instead of <random> distributions, whose sequences
// are implementation-defined; mt19937_64 raw output is pinned by the
// standard, so results reproduce across compilers.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tagnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Fans one global seed out to per-stage / per-replica streams.
// The label keeps streams for different purposes disjoint even when
// they share an index.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return splitmix64(splitmix64(base ^ h) + index);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    bool coin() { return (gen_() & 1u) != 0; }

    // Fisher-Yates.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tagnet
