#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lipharm {

// splitmix64: cheap, well-mixed 64-bit stream used only to derive seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent generator from (seed, index). Every sampler and
// every Monte Carlo walk gets its own stream this way, so results do not
// depend on scheduling or worker count.
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL + 0x3c6ef372fe94f82bULL;
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

// Role tags keep streams of different samplers in one scenario apart even
// when the user supplies a single master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t role) {
    std::uint64_t s = master + 0x9e3779b97f4a7c15ULL * (role + 1);
    return splitmix64(s);
}

inline double uniform_in(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform_in(std::mt19937_64& g, double lo, double hi) {
    double u = uniform_in(g, std::log(lo), std::log(hi));
    return std::exp(u);
}

// Uniform direction on the unit sphere in R^n.
inline std::vector<double> unit_vector(std::mt19937_64& g, int n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(n);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = normal(g);
            norm2 += v[i] * v[i];
        }
    } while (norm2 < 1e-300);
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

} // namespace lipharm
