#pragma once

#include <memory>
#include <vector>

#include "hopcorr/params.hpp"
#include "hopcorr/patterns.hpp"

namespace hopcorr {

// Finite-N spin configuration with incrementally maintained pattern overlaps.
// The cache stores the integer sums n_mu = sum_i xi_i^mu sigma_i, so cache
// coherence is exact (no floating-point drift); m_mu = n_mu / N.
class SpinSystem {
public:
    SpinSystem(std::shared_ptr<const PatternSet> patterns, std::vector<std::int8_t> sigma);

    // sigma = xi^mu columnwise.
    static SpinSystem aligned(std::shared_ptr<const PatternSet> patterns, int mu);
    static SpinSystem random(std::shared_ptr<const PatternSet> patterns, Rng& rng);

    int size() const { return static_cast<int>(sigma_.size()); }
    std::int8_t spin(int i) const { return sigma_[i]; }
    const std::vector<std::int8_t>& spins() const { return sigma_; }
    const PatternSet& patterns() const { return *patterns_; }

    void flip(int i);  // O(P) cache update

    const std::vector<long long>& overlap_counts() const { return counts_; }
    std::vector<double> mattis() const;

private:
    std::shared_ptr<const PatternSet> patterns_;
    std::vector<std::int8_t> sigma_;
    std::vector<long long> counts_;
};

// Overlap vector recomputed from scratch (reference implementation).
std::vector<double> mattis(const PatternSet& patterns, const std::vector<std::int8_t>& sigma);

// m^T X m with the cyclic three-term stencil; P=1 and P=2 wrap doubling fall
// out of the modular indexing.
double quadratic_form(const std::vector<double>& m, double a);

// -N sqrt(1 + m^T X m). Throws std::domain_error if the sqrt argument is not
// positive (unreachable for a < 1/2 where X is positive definite).
double hamiltonian_rel_corr(const SpinSystem& spins, const ModelParams& params);

// -(N/2) m^T X m.
double hamiltonian_cl_corr(const SpinSystem& spins, const ModelParams& params);

}  // namespace hopcorr
