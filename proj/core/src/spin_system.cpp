#include "hopcorr/spin_system.hpp"

#include <cmath>
#include <stdexcept>

namespace hopcorr {

SpinSystem::SpinSystem(std::shared_ptr<const PatternSet> patterns, std::vector<std::int8_t> sigma)
    : patterns_(std::move(patterns)), sigma_(std::move(sigma)) {
    if (!patterns_) throw std::invalid_argument("SpinSystem: null pattern set");
    if (static_cast<int>(sigma_.size()) != patterns_->N)
        throw std::invalid_argument("SpinSystem: sigma length != N");
    counts_.assign(static_cast<std::size_t>(patterns_->P), 0);
    for (int i = 0; i < patterns_->N; ++i) {
        if (sigma_[i] != 1 && sigma_[i] != -1) throw std::invalid_argument("SpinSystem: spin not +-1");
        for (int mu = 0; mu < patterns_->P; ++mu)
            counts_[mu] += static_cast<long long>(patterns_->at(i, mu)) * sigma_[i];
    }
}

SpinSystem SpinSystem::aligned(std::shared_ptr<const PatternSet> patterns, int mu) {
    if (!patterns) throw std::invalid_argument("SpinSystem::aligned: null pattern set");
    if (mu < 0 || mu >= patterns->P) throw std::invalid_argument("SpinSystem::aligned: mu out of range");
    std::vector<std::int8_t> sigma(static_cast<std::size_t>(patterns->N));
    for (int i = 0; i < patterns->N; ++i) sigma[i] = patterns->at(i, mu);
    return SpinSystem(std::move(patterns), std::move(sigma));
}

SpinSystem SpinSystem::random(std::shared_ptr<const PatternSet> patterns, Rng& rng) {
    if (!patterns) throw std::invalid_argument("SpinSystem::random: null pattern set");
    std::vector<std::int8_t> sigma(static_cast<std::size_t>(patterns->N));
    for (auto& s : sigma) s = static_cast<std::int8_t>(rng.next_sign());
    return SpinSystem(std::move(patterns), std::move(sigma));
}

void SpinSystem::flip(int i) {
    sigma_[i] = static_cast<std::int8_t>(-sigma_[i]);
    // sigma_[i] is already the new value: n_mu changes by 2 xi_i^mu sigma_i^new.
    for (int mu = 0; mu < patterns_->P; ++mu)
        counts_[mu] += 2LL * patterns_->at(i, mu) * sigma_[i];
}

std::vector<double> SpinSystem::mattis() const {
    std::vector<double> m(counts_.size());
    for (std::size_t mu = 0; mu < counts_.size(); ++mu)
        m[mu] = static_cast<double>(counts_[mu]) / patterns_->N;
    return m;
}

std::vector<double> mattis(const PatternSet& patterns, const std::vector<std::int8_t>& sigma) {
    if (static_cast<int>(sigma.size()) != patterns.N)
        throw std::invalid_argument("mattis: sigma length != N");
    std::vector<long long> counts(static_cast<std::size_t>(patterns.P), 0);
    for (int i = 0; i < patterns.N; ++i)
        for (int mu = 0; mu < patterns.P; ++mu)
            counts[mu] += static_cast<long long>(patterns.at(i, mu)) * sigma[i];
    std::vector<double> m(counts.size());
    for (std::size_t mu = 0; mu < counts.size(); ++mu)
        m[mu] = static_cast<double>(counts[mu]) / patterns.N;
    return m;
}

double quadratic_form(const std::vector<double>& m, double a) {
    const int P = static_cast<int>(m.size());
    double q = 0.0;
    for (int mu = 0; mu < P; ++mu) {
        const int up = (mu + 1) % P;
        const int dn = (mu + P - 1) % P;
        q += m[mu] * (m[mu] + a * (m[up] + m[dn]));
    }
    return q;
}

double hamiltonian_rel_corr(const SpinSystem& spins, const ModelParams& params) {
    const double arg = 1.0 + quadratic_form(spins.mattis(), params.a);
    if (!(arg > 0.0)) throw std::domain_error("hamiltonian_rel_corr: 1 + m^T X m <= 0");
    return -static_cast<double>(spins.size()) * std::sqrt(arg);
}

double hamiltonian_cl_corr(const SpinSystem& spins, const ModelParams& params) {
    return -0.5 * spins.size() * quadratic_form(spins.mattis(), params.a);
}

}  // namespace hopcorr
