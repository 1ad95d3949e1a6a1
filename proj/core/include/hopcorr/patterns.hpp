#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopcorr/rng.hpp"

namespace hopcorr {

// N x P array of +-1 pattern entries, row = neuron, column = pattern.
// Immutable by convention after construction; safe to share across threads.
struct PatternSet {
    int N = 0;
    int P = 0;
    std::uint64_t seed = 0;
    std::vector<std::int8_t> bits;  // row-major, bits[i*P + mu]

    std::int8_t at(int i, int mu) const { return bits[static_cast<std::size_t>(i) * P + mu]; }
};

// i.i.d. fair +-1 entries; identical seed gives identical bits.
PatternSet sample_patterns(int N, int P, std::uint64_t seed);

// CSV with header line "# N=<n> P=<p> seed=<s>", one row per neuron.
std::string patterns_to_csv(const PatternSet& ps);
void write_patterns_csv(const PatternSet& ps, const std::string& path);
PatternSet parse_patterns_csv(const std::string& text);
PatternSet read_patterns_csv(const std::string& path);

}  // namespace hopcorr
