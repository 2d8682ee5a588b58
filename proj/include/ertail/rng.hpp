#pragma once

#include <cstdint>
#include <random>

namespace ertail {

// Stateless 64-bit mixer, used to derive independent per-replicate seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for replicate `index` of a run seeded with `seed`. Distinct replicates
// get decorrelated streams; the mapping is pure, so any worker can compute it.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Deterministic uniform stream. mt19937_64 output is fully specified by the
// standard and the 53-bit conversion below avoids uniform_real_distribution,
// whose results may differ between standard library implementations. Identical
// seeds therefore reproduce identical draws on every platform.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : rng_(seed) {}

    // uniform double in [0, 1)
    double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, m)
    std::size_t next_below(std::size_t m) {
        return static_cast<std::size_t>(next() * static_cast<double>(m));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace ertail
