#pragma once

#include <vector>

#include "hopcorr/params.hpp"
#include "hopcorr/patterns.hpp"

namespace hopcorr {

inline constexpr int kEnumerationCap = 24;       // 2^N states
inline constexpr int kDistributionCap = 20;      // full 2^N weight vector in memory

// Finite-N pressure (1/N) log sum_sigma exp(-beta H_rel_corr(sigma)) by
// Gray-code enumeration with a running-max log-sum-exp. Exact and
// deterministic for a given PatternSet. Throws if N exceeds the cap.
double exact_pressure(const PatternSet& patterns, const ModelParams& params,
                      int enumeration_cap = kEnumerationCap);

// Gibbs probabilities of all 2^N states under the relativistic correlated
// Hamiltonian; index is the bitmask with bit i set iff sigma_i = +1.
std::vector<double> exact_state_distribution(const PatternSet& patterns, const ModelParams& params);

}  // namespace hopcorr
