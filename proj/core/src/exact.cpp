#include "hopcorr/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace hopcorr {

namespace {

// Gray-code walk over all 2^N states: one spin flips per step, so the integer
// overlap cache updates in O(P). visit(step, log_weight) gets -beta H.
template <typename Visit>
void walk_states(const PatternSet& patterns, const ModelParams& params, Visit&& visit) {
    const int N = patterns.N;
    const int P = patterns.P;
    const double a = params.a;
    std::vector<long long> counts(static_cast<std::size_t>(P), 0);
    for (int mu = 0; mu < P; ++mu) {
        long long c = 0;
        for (int i = 0; i < N; ++i) c -= patterns.at(i, mu);  // all spins start at -1
        counts[mu] = c;
    }
    const double inv_n2 = 1.0 / (static_cast<double>(N) * N);
    const std::uint64_t total = 1ULL << N;
    for (std::uint64_t step = 0;; ++step) {
        double q = 0.0;
        for (int mu = 0; mu < P; ++mu) {
            const int up = (mu + 1) % P;
            const int dn = (mu + P - 1) % P;
            q += static_cast<double>(counts[mu]) *
                 (static_cast<double>(counts[mu]) + a * (counts[up] + counts[dn]));
        }
        q *= inv_n2;
        visit(step, params.beta * N * std::sqrt(1.0 + q));
        if (step + 1 == total) break;
        const int i = std::countr_zero(step + 1);
        const std::uint64_t gray_next = (step + 1) ^ ((step + 1) >> 1);
        const int new_sign = ((gray_next >> i) & 1) ? 1 : -1;
        for (int mu = 0; mu < P; ++mu) counts[mu] += 2LL * new_sign * patterns.at(i, mu);
    }
}

}  // namespace

double exact_pressure(const PatternSet& patterns, const ModelParams& params, int enumeration_cap) {
    params.validate();
    if (params.zero_temperature()) throw std::invalid_argument("exact_pressure: beta must be finite");
    if (patterns.N < 1 || patterns.N > enumeration_cap)
        throw std::invalid_argument("exact_pressure: N outside [1, cap]");
    double max_lw = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    walk_states(patterns, params, [&](std::uint64_t, double lw) {
        if (lw > max_lw) {
            sum = sum * std::exp(max_lw - lw) + 1.0;
            max_lw = lw;
        } else {
            sum += std::exp(lw - max_lw);
        }
    });
    return (max_lw + std::log(sum)) / patterns.N;
}

std::vector<double> exact_state_distribution(const PatternSet& patterns, const ModelParams& params) {
    params.validate();
    if (params.zero_temperature())
        throw std::invalid_argument("exact_state_distribution: beta must be finite");
    if (patterns.N < 1 || patterns.N > kDistributionCap)
        throw std::invalid_argument("exact_state_distribution: N outside [1, cap]");
    std::vector<double> w(1ULL << patterns.N);
    double max_lw = -std::numeric_limits<double>::infinity();
    walk_states(patterns, params, [&](std::uint64_t step, double lw) {
        w[step ^ (step >> 1)] = lw;  // index: bit i set iff sigma_i = +1
        if (lw > max_lw) max_lw = lw;
    });
    double z = 0.0;
    for (double& lw : w) {
        lw = std::exp(lw - max_lw);
        z += lw;
    }
    for (double& p : w) p /= z;
    return w;
}

}  // namespace hopcorr
