#pragma once

#include <cstdint>

namespace hopcorr {

// xoshiro256** with splitmix64 seeding (Blackman/Vigna, public domain
// algorithm). Hand-rolled so that streams are bit-for-bit reproducible for a
// given seed, independent of the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    // Independent substream for data-parallel work (draw index, grid cell, ...).
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x = seed;
        std::uint64_t mixed = splitmix64(x) ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
        return Rng(mixed);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    // Unbiased integer in [0, n) by masked rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~0ULL >> __builtin_clzll(n - 1 | 1);
        std::uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= n);
        return v;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace hopcorr
