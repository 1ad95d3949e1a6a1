#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopcorr/exact.hpp"
#include "hopcorr/spin_system.hpp"

namespace hopcorr {

enum class McRule { Glauber, Metropolis };

struct McConfig {
    int N = 0;
    long sweeps = 0;        // each sweep = N proposed flips at random sites
    long burn_in = 0;       // sweeps discarded before measuring
    std::uint64_t seed = 0;
    McRule rule = McRule::Glauber;
    long measure_every = 1;

    void validate() const;  // burn_in < sweeps, N >= P handled by callers
};

// H(sigma with spin i flipped) - H(sigma) in O(P) from the cached overlaps,
// relativistic correlated Hamiltonian.
double delta_energy(const SpinSystem& spins, int i, const ModelParams& params);

struct McSample {
    long sweep_index = 0;
    std::vector<double> m;
    double energy_per_neuron = 0.0;
};

struct Trajectory {
    std::vector<McSample> samples;
    std::vector<double> mean_abs_m;  // time average of |m_mu(t)| over samples
};

// Single-spin-flip dynamics; random sequential site choice; acceptance
// Glauber 1/(1+exp(beta dH)) or Metropolis min(1, exp(-beta dH)).
// Deterministic for a given (patterns, init, cfg).
Trajectory run(const ModelParams& params, SpinSystem init, const McConfig& cfg);

// Visit counts over all 2^N states, one count per proposed step (accepted or
// not). Requires N <= kDistributionCap.
std::vector<double> empirical_state_distribution(const ModelParams& params, SpinSystem init,
                                                 long steps, std::uint64_t seed, McRule rule);

struct SelfAvgRow {
    int N = 0;
    double mean = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;  // moment-based standard error of the variance
};

// For each N: `draws` pattern sets (independent seed streams), exact_pressure
// each, report mean/variance. Draws run data-parallel.
std::vector<SelfAvgRow> selfavg_experiment(const ModelParams& params, const std::vector<int>& N_list,
                                           int draws, std::uint64_t seed);

struct SubadditivityReport {
    int N = 0, N1 = 0, N2 = 0;
    double F_N = 0.0, F_N1 = 0.0, F_N2 = 0.0;
    double slack = 0.0;  // N1 F_N1 + N2 F_N2 - N F_N, >= 0 when the inequality holds
    bool holds = false;
};

// Splits the pattern rows into the first N1 and remaining N2 neurons.
SubadditivityReport subadditivity_check(const PatternSet& patterns, const ModelParams& params,
                                        int N1, int N2);

// CSV columns: sweep_index, m_1..m_P, energy_per_neuron.
std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& meta = {});

}  // namespace hopcorr
