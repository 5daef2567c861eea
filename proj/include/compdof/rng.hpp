#pragma once

// Seeded randomness helpers. Every draw goes through bounded() or the
// shuffles below; std::uniform_int_distribution is implementation-defined,
// so using it would break the cross-platform reproducibility contract.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace compdof {

using Rng = std::mt19937_64;

inline std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of an independent substream, e.g. search trial t of a seeded run.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return split_mix64(seed ^ split_mix64(index + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Unbiased draw from [0, n); rejects the top partial block.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
    std::uint64_t x, r;
    do {
        x = rng();
        r = x % n;
    } while (x - r > ~std::uint64_t{0} - (n - 1));
    return r;
}

// Fisher-Yates over the whole vector.
template <typename T>
void shuffle_all(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded(rng, i)]);
}

// Partial Fisher-Yates: v[0..count) becomes a uniform count-subset of v.
template <typename T>
void shuffle_prefix(std::vector<T>& v, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count; ++i)
        std::swap(v[i], v[i + bounded(rng, v.size() - i)]);
}

inline double unit_double(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

// Box-Muller standard normal.
inline double standard_normal(Rng& rng) {
    double u1 = 1.0 - unit_double(rng);  // (0, 1]
    double u2 = unit_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

// Exact for n <= 64 (every C(64, r) fits in uint64_t); saturates above.
inline std::uint64_t binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > ~std::uint64_t{0}) return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace compdof
