#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hopcorr/correlation.hpp"
#include "hopcorr/io_util.hpp"
#include "hopcorr/meanfield.hpp"
#include "hopcorr/montecarlo.hpp"
#include "hopcorr/phases.hpp"

namespace hopcorr::checks {

namespace {

double max_abs(const std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx;
}

}  // namespace

SuiteResult run_tc_suite() {
    SuiteResult res{"tc"};
    const SolverConfig cfg;
    std::ostringstream rows;
    bool ok = true;
    rows << "[";
    for (int i = 0; i <= 5; ++i) {
        const double a = 0.1 * i;
        const double tc = find_tc(a, 5, cfg, 0.01);
        const double expected = critical_temperature(a);
        const double err = std::abs(tc - expected);
        ok = ok && err <= 0.02;
        if (i) rows << ", ";
        rows << "{\"a\": " << fmt17(a) << ", \"tc\": " << fmt17(tc)
             << ", \"expected\": " << fmt17(expected) << ", \"error\": " << fmt17(err) << "}";
    }
    rows << "]";
    res.passed = ok;
    res.details_json = "{\"tolerance\": 0.02, \"points\": " + rows.str() + "}";
    return res;
}

SuiteResult run_spectrum_suite() {
    SuiteResult res{"spectrum"};
    double worst_eig = 0.0, worst_poly = 0.0;
    for (int P = 3; P <= 30; ++P) {
        for (double a : {0.1, 0.3, 0.49}) {
            const Spectrum spec = spectrum(build_x(P, a));
            std::vector<double> closed(static_cast<std::size_t>(P));
            for (int k = 0; k < P; ++k) closed[k] = closed_form_eigenvalue(P, a, k);
            std::sort(closed.begin(), closed.end(), std::greater<>());
            for (int k = 0; k < P; ++k) {
                worst_eig = std::max(worst_eig, std::abs(spec.eigenvalues[k] - closed[k]));
                worst_poly = std::max(worst_poly, std::abs(char_poly_value(P, a, closed[k])));
            }
        }
    }
    res.passed = worst_eig <= 1e-10 && worst_poly <= 1e-9;
    std::ostringstream d;
    d << "{\"P_range\": [3, 30], \"a_values\": [0.1, 0.3, 0.49], \"max_eigenvalue_residual\": "
      << fmt17(worst_eig) << ", \"max_char_poly_residual\": " << fmt17(worst_poly)
      << ", \"tolerances\": [1e-10, 1e-09]}";
    res.details_json = d.str();
    return res;
}

SuiteResult run_stationarity_suite() {
    SuiteResult res{"stationarity"};
    const SolverConfig cfg;
    // 11 x 11 grid of multi-start points; every converged non-trivial solution
    // is a candidate until 100 have been graded.
    std::vector<double> T_values{0.1, 0.2, 0.3, 0.45, 0.6, 0.8, 1.0, 1.25, 1.5, 2.0, 2.5};
    std::vector<PhasePoint> cells(T_values.size() * 11);
    parallel_for(static_cast<int>(cells.size()), [&](int idx) {
        const double T = T_values[idx / 11];
        const double a = 0.1 * (idx % 11);
        cells[idx] = multi_start(ModelParams::from_temperature(5, a, T), cfg);
    });
    int graded = 0;
    double worst = 0.0;
    for (const auto& cell : cells) {
        if (graded >= 100) break;
        const ModelParams params = ModelParams::from_temperature(5, cell.a, cell.T);
        for (const auto& sol : cell.all_solutions) {
            if (graded >= 100) break;
            if (!sol.converged || max_abs(sol.M) <= 1e-2) continue;
            worst = std::max(worst, max_abs(grad_pressure_fd(sol.M, params)));
            ++graded;
        }
    }
    res.passed = graded >= 100 && worst <= 1e-5;
    std::ostringstream d;
    d << "{\"fixed_points_graded\": " << graded
      << ", \"max_gradient_inf_norm\": " << fmt17(worst) << ", \"tolerance\": 1e-05}";
    res.details_json = d.str();
    return res;
}

SuiteResult run_subadd_suite() {
    SuiteResult res{"subadd"};
    const int draws = 50;
    const double betas[] = {0.5, 1.0, 2.0};
    std::vector<double> min_slack(draws, 0.0);
    std::vector<int> violations(draws, 0);
    parallel_for(draws, [&](int d) {
        const std::uint64_t seed = Rng::stream(4242, static_cast<std::uint64_t>(d)).next_u64();
        const PatternSet ps = sample_patterns(16, 2, seed);
        double lo = std::numeric_limits<double>::infinity();
        for (double beta : betas) {
            ModelParams params;
            params.P = 2;
            params.a = 0.3;
            params.beta = beta;
            const SubadditivityReport rep = subadditivity_check(ps, params, 8, 8);
            lo = std::min(lo, rep.slack);
            if (!rep.holds) ++violations[d];
        }
        min_slack[d] = lo;
    });
    int total_violations = 0;
    double overall_min = std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
        total_violations += violations[d];
        overall_min = std::min(overall_min, min_slack[d]);
    }
    res.passed = total_violations == 0;
    std::ostringstream d;
    d << "{\"draws\": 50, \"N\": 16, \"split\": [8, 8], \"P\": 2, \"a\": 0.3, "
      << "\"betas\": [0.5, 1, 2], \"violations\": " << total_violations
      << ", \"min_slack\": " << fmt17(overall_min) << "}";
    res.details_json = d.str();
    return res;
}

SuiteResult run_selfavg_suite() {
    SuiteResult res{"selfavg"};
    ModelParams params;
    params.P = 2;
    params.a = 0.3;
    params.beta = 1.0;
    const std::vector<SelfAvgRow> rows = selfavg_experiment(params, {8, 12, 16, 20}, 200, 777);
    int inversions = 0;
    bool inversion_significant = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double rise = rows[i].variance - rows[i - 1].variance;
        if (rise <= 0.0) continue;
        ++inversions;
        const double se = std::sqrt(rows[i].variance_se * rows[i].variance_se +
                                    rows[i - 1].variance_se * rows[i - 1].variance_se);
        if (rise > 2.0 * se) inversion_significant = true;
    }
    res.passed = inversions <= 1 && !inversion_significant;
    std::ostringstream d;
    d << "{\"P\": 2, \"a\": 0.3, \"beta\": 1, \"draws\": 200, \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) d << ", ";
        d << "{\"N\": " << rows[i].N << ", \"mean\": " << fmt17(rows[i].mean)
          << ", \"variance\": " << fmt17(rows[i].variance)
          << ", \"variance_se\": " << fmt17(rows[i].variance_se) << "}";
    }
    d << "], \"inversions\": " << inversions
      << ", \"significant_inversion\": " << (inversion_significant ? "true" : "false") << "}";
    res.details_json = d.str();
    return res;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names) {
    const std::vector<std::string> all{"tc", "spectrum", "stationarity", "subadd", "selfavg"};
    std::vector<std::string> todo = names.empty() ? all : names;
    std::vector<SuiteResult> out;
    out.reserve(todo.size());
    for (const auto& name : todo) {
        if (name == "tc")
            out.push_back(run_tc_suite());
        else if (name == "spectrum")
            out.push_back(run_spectrum_suite());
        else if (name == "stationarity")
            out.push_back(run_stationarity_suite());
        else if (name == "subadd")
            out.push_back(run_subadd_suite());
        else if (name == "selfavg")
            out.push_back(run_selfavg_suite());
        else
            throw std::invalid_argument("unknown check suite '" + name + "'");
    }
    return out;
}

std::string report_to_json(const std::vector<SuiteResult>& results) {
    std::ostringstream out;
    bool all = true;
    out << "{\n  \"suites\": [\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        all = all && results[i].passed;
        out << "    {\"name\": \"" << json_escape(results[i].name)
            << "\", \"passed\": " << (results[i].passed ? "true" : "false")
            << ", \"details\": " << results[i].details_json << "}";
        out << (i + 1 < results.size() ? ",\n" : "\n");
    }
    out << "  ],\n  \"all_passed\": " << (all ? "true" : "false") << "\n}\n";
    return out.str();
}

}  // namespace hopcorr::checks
