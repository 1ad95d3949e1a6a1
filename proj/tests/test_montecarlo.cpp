#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopcorr/exact.hpp"
#include "hopcorr/montecarlo.hpp"
#include "hopcorr/params.hpp"
#include "hopcorr/patterns.hpp"
#include "hopcorr/rng.hpp"
#include "hopcorr/spin_system.hpp"

using namespace hopcorr;

namespace {

double total_variation(const std::vector<double>& counts, const std::vector<double>& exact) {
    const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
    double tv = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) tv += std::abs(counts[s] / n - exact[s]);
    return 0.5 * tv;
}

}  // namespace

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("configuration validation") {
    McConfig cfg;
    cfg.N = 10;
    cfg.sweeps = 5;
    cfg.burn_in = 1;
    cfg.validate();
    McConfig bad = cfg;
    bad.N = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sweeps = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.burn_in = 5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.measure_every = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const auto ps = std::make_shared<PatternSet>(sample_patterns(12, 2, 1));
    Rng rng(1);
    const ModelParams p = ModelParams::from_temperature(2, 0.2, 1.0);
    McConfig mismatch = cfg;  // N=10 but the system has 12 spins
    CHECK_THROWS_AS(run(p, SpinSystem::random(ps, rng), mismatch), std::invalid_argument);
}

TEST_CASE("single-flip energy difference equals full recomputation") {
    const int N = 30, P = 4;
    const ModelParams p = ModelParams::from_temperature(P, 0.3, 0.7);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 55));
    Rng rng(56);
    SpinSystem s = SpinSystem::random(ps, rng);
    for (int rep = 0; rep < 10000; ++rep) {
        const int i = static_cast<int>(rng.next_below(N));
        const double before = hamiltonian_rel_corr(s, p);
        const double fast = delta_energy(s, i, p);
        s.flip(i);
        const double direct = hamiltonian_rel_corr(s, p) - before;
        CHECK(std::abs(fast - direct) <= 1e-10);
        if (rng.next_u64() & 1) s.flip(i);  // sometimes keep the flip
    }
}

TEST_CASE("trajectory is deterministic and measures on schedule") {
    const int N = 60, P = 3;
    const ModelParams p = ModelParams::from_temperature(P, 0.2, 0.8);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 7));
    McConfig cfg;
    cfg.N = N;
    cfg.sweeps = 10;
    cfg.burn_in = 3;
    cfg.measure_every = 2;
    cfg.seed = 99;
    const Trajectory t1 = run(p, SpinSystem::aligned(ps, 0), cfg);
    const Trajectory t2 = run(p, SpinSystem::aligned(ps, 0), cfg);
    REQUIRE(t1.samples.size() == 4);
    const long want_sweeps[] = {3, 5, 7, 9};
    for (int k = 0; k < 4; ++k) {
        CHECK(t1.samples[k].sweep_index == want_sweeps[k]);
        CHECK(t1.samples[k].m == t2.samples[k].m);
        CHECK(t1.samples[k].energy_per_neuron == t2.samples[k].energy_per_neuron);
    }
    CHECK(t1.mean_abs_m == t2.mean_abs_m);

    // mean_abs_m is the plain time average of |m_mu| over the samples.
    for (int mu = 0; mu < P; ++mu) {
        double acc = 0.0;
        for (const McSample& smp : t1.samples) acc += std::abs(smp.m[mu]);
        CHECK(t1.mean_abs_m[mu] == doctest::Approx(acc / 4.0).epsilon(1e-15));
    }
}

TEST_CASE("deep quench stays in the retrieval well") {
    const int N = 500, P = 3;
    const ModelParams p = ModelParams::from_temperature(P, 0.0, 1e-3);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 21));
    McConfig cfg;
    cfg.N = N;
    cfg.sweeps = 60;
    cfg.burn_in = 10;
    cfg.seed = 5;
    const Trajectory traj = run(p, SpinSystem::aligned(ps, 0), cfg);
    CHECK(traj.mean_abs_m[0] >= 0.99);
    CHECK(traj.mean_abs_m[1] <= 0.1);
    CHECK(traj.mean_abs_m[2] <= 0.1);
    for (const McSample& smp : traj.samples)
        CHECK(smp.energy_per_neuron == doctest::Approx(-std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("visit counts sum to the number of proposed steps") {
    const auto ps = std::make_shared<PatternSet>(sample_patterns(8, 2, 3));
    const ModelParams p = ModelParams::from_temperature(2, 0.3, 1.0);
    Rng rng(4);
    const std::vector<double> counts =
        empirical_state_distribution(p, SpinSystem::random(ps, rng), 5000, 11, McRule::Glauber);
    REQUIRE(counts.size() == 256);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0.0) == 5000.0);

    const auto big = std::make_shared<PatternSet>(sample_patterns(kDistributionCap + 1, 2, 3));
    Rng rng2(5);
    CHECK_THROWS_AS(
        empirical_state_distribution(p, SpinSystem::random(big, rng2), 10, 1, McRule::Glauber),
        std::invalid_argument);
}

TEST_CASE("infinite temperature samples the hypercube uniformly") {
    const int N = 6;
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, 2, 9));
    ModelParams p;
    p.P = 2;
    p.a = 0.3;
    p.beta = 0.0;
    Rng rng(10);
    const std::vector<double> counts =
        empirical_state_distribution(p, SpinSystem::random(ps, rng), 2000000, 13, McRule::Glauber);
    const std::vector<double> uniform(std::size_t{1} << N, 1.0 / (std::size_t{1} << N));
    CHECK(total_variation(counts, uniform) <= 0.02);
}

TEST_CASE("Metropolis chain reproduces the exact Gibbs measure") {
    const int N = 6, P = 2;
    const ModelParams p = ModelParams::from_temperature(P, 0.3, 1.0);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 31));
    const std::vector<double> exact = exact_state_distribution(*ps, p);
    Rng rng(32);
    const std::vector<double> counts =
        empirical_state_distribution(p, SpinSystem::random(ps, rng), 2000000, 33, McRule::Metropolis);
    CHECK(total_variation(counts, exact) <= 0.02);
}

TEST_CASE("pressure self-averaging table is deterministic and well formed") {
    const ModelParams p = ModelParams::from_temperature(2, 0.3, 1.0);
    const std::vector<SelfAvgRow> rows = selfavg_experiment(p, {6, 8}, 40, 2025);
    const std::vector<SelfAvgRow> again = selfavg_experiment(p, {6, 8}, 40, 2025);
    REQUIRE(rows.size() == 2);
    for (int k = 0; k < 2; ++k) {
        CHECK(rows[k].N == (k == 0 ? 6 : 8));
        CHECK(std::isfinite(rows[k].mean));
        CHECK(rows[k].variance >= 0.0);
        CHECK(rows[k].variance_se >= 0.0);
        CHECK(rows[k].mean == again[k].mean);
        CHECK(rows[k].variance == again[k].variance);
    }
    CHECK(rows[0].mean > std::log(2.0));  // pressure exceeds the entropy floor
    CHECK_THROWS_AS(selfavg_experiment(p, {6}, 1, 1), std::invalid_argument);
}

TEST_CASE("finite-size pressure is subadditive") {
    const ModelParams p = ModelParams::from_temperature(2, 0.3, 1.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PatternSet ps = sample_patterns(12, 2, 9000 + seed);
        const SubadditivityReport rep = subadditivity_check(ps, p, 6, 6);
        CHECK(rep.N == 12);
        CHECK(rep.N1 == 6);
        CHECK(rep.N2 == 6);
        CHECK(rep.holds);
        CHECK(rep.slack >= 0.0);
        CHECK(rep.slack ==
              doctest::Approx(6 * rep.F_N1 + 6 * rep.F_N2 - 12 * rep.F_N).epsilon(1e-12));
        CHECK(rep.F_N == doctest::Approx(exact_pressure(ps, p)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(subadditivity_check(sample_patterns(12, 2, 1), p, 5, 6),
                    std::invalid_argument);
}

TEST_CASE("trajectory CSV layout") {
    const int N = 40, P = 2;
    const ModelParams p = ModelParams::from_temperature(P, 0.1, 0.8);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 12));
    McConfig cfg;
    cfg.N = N;
    cfg.sweeps = 6;
    cfg.burn_in = 2;
    cfg.seed = 77;
    const Trajectory traj = run(p, SpinSystem::aligned(ps, 0), cfg);
    const std::string csv = trajectory_to_csv(traj, {"origin: unit test"});
    CHECK(csv.find("# origin: unit test\n") != std::string::npos);
    CHECK(csv.find("sweep_index,m_1,m_2,energy_per_neuron\n") != std::string::npos);
    int data = 0;
    for (std::size_t pos = 0; (pos = csv.find('\n', pos)) != std::string::npos; ++pos) ++data;
    // meta + header + one line per sample
    CHECK(data == 2 + static_cast<int>(traj.samples.size()));
}

TEST_SUITE_END();
