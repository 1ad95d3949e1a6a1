#include "hopcorr/montecarlo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hopcorr/io_util.hpp"

namespace hopcorr {

namespace {

double acceptance(double dh, const ModelParams& params, McRule rule) {
    if (params.zero_temperature()) {
        // Limit of both rules without forming beta*dh (inf*0 is NaN).
        if (dh < 0.0) return 1.0;
        if (dh > 0.0) return 0.0;
        return rule == McRule::Glauber ? 0.5 : 1.0;
    }
    if (rule == McRule::Glauber) return 1.0 / (1.0 + std::exp(params.beta * dh));
    return dh <= 0.0 ? 1.0 : std::exp(-params.beta * dh);
}

}  // namespace

void McConfig::validate() const {
    if (N < 1) throw std::invalid_argument("McConfig: N must be >= 1");
    if (sweeps < 1) throw std::invalid_argument("McConfig: sweeps must be >= 1");
    if (burn_in < 0 || burn_in >= sweeps)
        throw std::invalid_argument("McConfig: need 0 <= burn_in < sweeps");
    if (measure_every < 1) throw std::invalid_argument("McConfig: measure_every must be >= 1");
}

double delta_energy(const SpinSystem& spins, int i, const ModelParams& params) {
    const PatternSet& pat = spins.patterns();
    const int P = pat.P;
    const double N = spins.size();
    const auto& counts = spins.overlap_counts();
    const double flip = -2.0 * spins.spin(i);
    const auto cnt = [&](int mu) { return static_cast<double>(counts[mu]); };
    const auto cnt_flipped = [&](int mu) { return cnt(mu) + flip * pat.at(i, mu); };
    double q = 0.0, qf = 0.0;
    for (int mu = 0; mu < P; ++mu) {
        const int up = (mu + 1) % P;
        const int dn = (mu + P - 1) % P;
        q += cnt(mu) * (cnt(mu) + params.a * (cnt(up) + cnt(dn)));
        qf += cnt_flipped(mu) * (cnt_flipped(mu) + params.a * (cnt_flipped(up) + cnt_flipped(dn)));
    }
    const double inv_n2 = 1.0 / (N * N);
    return -N * (std::sqrt(1.0 + qf * inv_n2) - std::sqrt(1.0 + q * inv_n2));
}

Trajectory run(const ModelParams& params, SpinSystem spins, const McConfig& cfg) {
    params.validate();
    cfg.validate();
    if (cfg.N != spins.size()) throw std::invalid_argument("run: cfg.N != system size");
    if (spins.patterns().P != params.P) throw std::invalid_argument("run: pattern P != params.P");
    Rng rng(cfg.seed);
    const int N = spins.size();
    Trajectory traj;
    for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (int step = 0; step < N; ++step) {
            const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(N)));
            const double dh = delta_energy(spins, i, params);
            if (rng.next_double() < acceptance(dh, params, cfg.rule)) spins.flip(i);
        }
        if (sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.measure_every == 0) {
            McSample s;
            s.sweep_index = sweep;
            s.m = spins.mattis();
            s.energy_per_neuron = hamiltonian_rel_corr(spins, params) / N;
            traj.samples.push_back(std::move(s));
        }
    }
    traj.mean_abs_m.assign(static_cast<std::size_t>(params.P), 0.0);
    for (const auto& s : traj.samples)
        for (int mu = 0; mu < params.P; ++mu) traj.mean_abs_m[mu] += std::abs(s.m[mu]);
    if (!traj.samples.empty())
        for (auto& v : traj.mean_abs_m) v /= static_cast<double>(traj.samples.size());
    return traj;
}

std::vector<double> empirical_state_distribution(const ModelParams& params, SpinSystem spins,
                                                 long steps, std::uint64_t seed, McRule rule) {
    params.validate();
    const int N = spins.size();
    if (N < 1 || N > kDistributionCap)
        throw std::invalid_argument("empirical_state_distribution: N outside [1, cap]");
    if (steps < 1) throw std::invalid_argument("empirical_state_distribution: steps must be >= 1");
    std::vector<double> counts(1ULL << N, 0.0);
    std::uint64_t state = 0;
    for (int i = 0; i < N; ++i)
        if (spins.spin(i) > 0) state |= 1ULL << i;
    Rng rng(seed);
    for (long t = 0; t < steps; ++t) {
        const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(N)));
        const double dh = delta_energy(spins, i, params);
        if (rng.next_double() < acceptance(dh, params, rule)) {
            spins.flip(i);
            state ^= 1ULL << i;
        }
        counts[state] += 1.0;  // every proposed step contributes one visit
    }
    return counts;
}

std::vector<SelfAvgRow> selfavg_experiment(const ModelParams& params, const std::vector<int>& N_list,
                                           int draws, std::uint64_t seed) {
    params.validate();
    if (draws < 2) throw std::invalid_argument("selfavg_experiment: draws must be >= 2");
    std::vector<SelfAvgRow> rows;
    rows.reserve(N_list.size());
    for (std::size_t idx = 0; idx < N_list.size(); ++idx) {
        const int N = N_list[idx];
        std::vector<double> F(static_cast<std::size_t>(draws));
        parallel_for(draws, [&](int d) {
            const std::uint64_t stream_id = idx * 1000003ULL + static_cast<std::uint64_t>(d);
            const std::uint64_t pat_seed = Rng::stream(seed, stream_id).next_u64();
            F[d] = exact_pressure(sample_patterns(N, params.P, pat_seed), params);
        });
        SelfAvgRow row;
        row.N = N;
        double mean = 0.0;
        for (double f : F) mean += f;
        mean /= draws;
        double m2 = 0.0, m4 = 0.0;
        for (double f : F) {
            const double d2 = (f - mean) * (f - mean);
            m2 += d2;
            m4 += d2 * d2;
        }
        m2 /= draws;
        m4 /= draws;
        const double n = draws;
        row.mean = mean;
        row.variance = m2 * n / (n - 1.0);
        // Moment-based Var(s^2) = (m4 - (n-3)/(n-1) s^4) / n.
        const double var_of_var =
            (m4 - (n - 3.0) / (n - 1.0) * row.variance * row.variance) / n;
        row.variance_se = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

SubadditivityReport subadditivity_check(const PatternSet& patterns, const ModelParams& params,
                                        int N1, int N2) {
    if (N1 < 1 || N2 < 1 || N1 + N2 != patterns.N)
        throw std::invalid_argument("subadditivity_check: need N1 + N2 == N with both >= 1");
    PatternSet p1, p2;
    p1.N = N1;
    p2.N = N2;
    p1.P = p2.P = patterns.P;
    p1.seed = p2.seed = patterns.seed;
    const std::size_t split = static_cast<std::size_t>(N1) * patterns.P;
    p1.bits.assign(patterns.bits.begin(), patterns.bits.begin() + split);
    p2.bits.assign(patterns.bits.begin() + split, patterns.bits.end());
    SubadditivityReport rep;
    rep.N = patterns.N;
    rep.N1 = N1;
    rep.N2 = N2;
    rep.F_N = exact_pressure(patterns, params);
    rep.F_N1 = exact_pressure(p1, params);
    rep.F_N2 = exact_pressure(p2, params);
    rep.slack = N1 * rep.F_N1 + N2 * rep.F_N2 - patterns.N * rep.F_N;
    rep.holds = rep.slack >= 0.0;
    return rep;
}

std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& meta) {
    std::ostringstream out;
    for (const auto& line : meta) out << "# " << line << '\n';
    const int P = static_cast<int>(traj.mean_abs_m.size());
    out << "sweep_index";
    for (int mu = 1; mu <= P; ++mu) out << ",m_" << mu;
    out << ",energy_per_neuron\n";
    for (const auto& s : traj.samples) {
        out << s.sweep_index;
        for (double v : s.m) out << ',' << fmt17(v);
        out << ',' << fmt17(s.energy_per_neuron) << '\n';
    }
    return out.str();
}

}  // namespace hopcorr
