#include <CLI11.hpp>

#include <cstdio>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "checks.hpp"
#include "hopcorr/correlation.hpp"
#include "hopcorr/io_util.hpp"
#include "hopcorr/meanfield.hpp"
#include "hopcorr/montecarlo.hpp"
#include "hopcorr/patterns.hpp"
#include "hopcorr/phases.hpp"

namespace {

using namespace hopcorr;

struct Range {
    double min = 0.0, max = 0.0;
    int steps = 1;
};

// "1.5" is a pinned single value, "min:max:steps" an inclusive linear grid.
Range parse_range(const std::string& text) {
    Range r;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.min = r.max = std::stod(text);
        return r;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("range must be <value> or min:max:steps, got '" + text + "'");
    r.min = std::stod(text.substr(0, c1));
    r.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.steps = std::stoi(text.substr(c2 + 1));
    if (r.steps < 1) throw std::invalid_argument("range steps must be >= 1");
    return r;
}

std::string range_echo(const Range& r) {
    return fmt17(r.min) + ":" + fmt17(r.max) + ":" + std::to_string(r.steps);
}

Magnetization make_init(const std::string& spec, int P, double a) {
    if (spec == "pure") {
        Magnetization m(static_cast<std::size_t>(P), 0.0);
        m[0] = 1.0;
        return m;
    }
    if (spec == "symmetric") return Magnetization(static_cast<std::size_t>(P), 0.5);
    if (spec == "correlated") return correlated_ansatz(P, a);
    if (spec == "zero") return Magnetization(static_cast<std::size_t>(P), 0.0);
    if (spec.rfind("noisy:", 0) == 0) {
        const double delta = std::stod(spec.substr(6));
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("noisy:<delta> needs delta in (0,1)");
        Magnetization m(static_cast<std::size_t>(P), delta);
        m[0] = 1.0 - delta;
        return m;
    }
    if (spec.rfind("file:", 0) == 0) {
        std::string text = read_file(spec.substr(5));
        for (auto& ch : text)
            if (ch == ',') ch = ' ';
        std::istringstream in(text);
        Magnetization m;
        double v = 0.0;
        while (in >> v) m.push_back(v);
        if (static_cast<int>(m.size()) != P)
            throw std::invalid_argument("init file must hold exactly P numbers");
        return m;
    }
    throw std::invalid_argument(
        "unknown --init '" + spec +
        "' (expected pure|symmetric|correlated|noisy:<delta>|zero|file:<path>)");
}

void add_solver_flags(CLI::App* cmd, SolverConfig& cfg) {
    cmd->add_option("--damping", cfg.damping, "Damping factor in (0,1]")->capture_default_str();
    cmd->add_option("--tol", cfg.tol, "Convergence threshold on max|dM|")->capture_default_str();
    cmd->add_option("--max-iter", cfg.max_iter, "Iteration cap")->capture_default_str();
    cmd->add_option("--zero-eps", cfg.zero_eps, "Magnitude treated as zero by the solver")
        ->capture_default_str();
}

int run_solve(int P, double a, double T, const std::string& init_spec,
              const std::string& model_str, const SolverConfig& cfg, const std::string& out) {
    const Model model = model_from_string(model_str);
    const ModelParams params = ModelParams::from_temperature(P, a, T);
    FixedPointResult res = solve(params, make_init(init_spec, P, a), cfg, model);
    res.init_label = init_spec;
    const std::string js = fixed_point_to_json(res, params, model);
    if (!out.empty()) write_file_atomic(out, js);
    std::fputs(js.c_str(), stdout);
    return res.converged ? 0 : 2;
}

int run_sweep(int P, const std::string& t_text, const std::string& a_text,
              const std::string& init_spec, bool multi_start_flag, const SolverConfig& cfg,
              const std::string& out, const std::string& heatmap) {
    if (!init_spec.empty() && multi_start_flag)
        throw std::invalid_argument("--init and --multi-start are mutually exclusive");
    const Range tr = parse_range(t_text);
    const Range ar = parse_range(a_text);
    SweepGrid grid;
    grid.T_min = tr.min;
    grid.T_max = tr.max;
    grid.T_steps = tr.steps;
    grid.a_min = ar.min;
    grid.a_max = ar.max;
    grid.a_steps = ar.steps;
    grid.P = P;
    if (!init_spec.empty())
        grid.init_set.emplace_back(init_spec, make_init(init_spec, P, ar.min));
    const std::vector<PhasePoint> points = sweep(grid, cfg);

    const std::vector<std::string> meta{
        "generator: hopcorr sweep",
        "P=" + std::to_string(P),
        "T=" + range_echo(tr),
        "a=" + range_echo(ar),
        "init=" + (init_spec.empty() ? std::string("multi-start") : init_spec),
        "damping=" + fmt17(cfg.damping),
        "tol=" + fmt17(cfg.tol),
        "max_iter=" + std::to_string(cfg.max_iter),
        "zero_eps=" + fmt17(cfg.zero_eps),
    };
    write_file_atomic(out, sweep_to_csv(points, grid, meta));
    if (!heatmap.empty()) write_file_atomic(heatmap, sweep_to_ppm(points, grid));

    std::map<std::string, int> counts;
    int r1 = 0, r2 = 0, unconverged = 0;
    for (const auto& pt : points) {
        ++counts[to_string(pt.label)];
        if (pt.sublabel == Sublabel::R1) ++r1;
        if (pt.sublabel == Sublabel::R2) ++r2;
        if (!pt.best.converged) ++unconverged;
    }
    std::printf("cells=%zu\n", points.size());
    for (const char* name : {"ergodic", "symmetric", "retrieval", "correlated", "unclassified"})
        std::printf("%s=%d\n", name, counts.count(name) ? counts[name] : 0);
    std::printf("R1=%d\nR2=%d\nunconverged=%d\n", r1, r2, unconverged);
    std::printf("wrote %s\n", out.c_str());
    if (!heatmap.empty()) std::printf("wrote %s\n", heatmap.c_str());
    return 0;
}

int run_spectrum(int P, double a, const std::string& out) {
    const std::string js = spectrum_to_json(spectrum(build_x(P, a)));
    if (!out.empty()) write_file_atomic(out, js);
    std::fputs(js.c_str(), stdout);
    return 0;
}

int run_mc(int P, double a, double T, int N, long sweeps, long burn_in, long measure_every,
           std::uint64_t seed, const std::string& rule_str, const std::string& spin_init,
           const std::string& out) {
    const ModelParams params = ModelParams::from_temperature(P, a, T);
    McRule rule;
    if (rule_str == "glauber")
        rule = McRule::Glauber;
    else if (rule_str == "metropolis")
        rule = McRule::Metropolis;
    else
        throw std::invalid_argument("unknown --rule '" + rule_str + "'");

    auto patterns = std::make_shared<PatternSet>(sample_patterns(N, P, seed));
    SpinSystem spins = [&]() -> SpinSystem {
        if (spin_init == "aligned") return SpinSystem::aligned(patterns, 0);
        if (spin_init == "random") {
            Rng rng = Rng::stream(seed, 0xA11CEULL);
            return SpinSystem::random(patterns, rng);
        }
        throw std::invalid_argument("unknown --spin-init '" + spin_init + "'");
    }();

    McConfig cfg;
    cfg.N = N;
    cfg.sweeps = sweeps;
    cfg.burn_in = burn_in;
    cfg.measure_every = measure_every;
    cfg.rule = rule;
    cfg.seed = Rng::stream(seed, 1).next_u64();  // dynamics stream, distinct from patterns

    const Trajectory traj = run(params, std::move(spins), cfg);
    const std::vector<std::string> meta{
        "generator: hopcorr mc",
        "P=" + std::to_string(P),
        "a=" + fmt17(a),
        "T=" + fmt17(T),
        "N=" + std::to_string(N),
        "sweeps=" + std::to_string(sweeps),
        "burn_in=" + std::to_string(burn_in),
        "measure_every=" + std::to_string(measure_every),
        "seed=" + std::to_string(seed),
        "rule=" + rule_str,
        "spin_init=" + spin_init,
    };
    const std::string csv = trajectory_to_csv(traj, meta);
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file_atomic(out, csv);
        std::printf("samples=%zu\nmean_abs_m=", traj.samples.size());
        for (std::size_t mu = 0; mu < traj.mean_abs_m.size(); ++mu)
            std::printf("%s%s", mu ? "," : "", fmt17(traj.mean_abs_m[mu]).c_str());
        std::printf("\nwrote %s\n", out.c_str());
    }
    return 0;
}

int run_check(const std::vector<std::string>& suites, const std::string& out) {
    const std::vector<checks::SuiteResult> results = checks::run_suites(suites);
    const std::string js = checks::report_to_json(results);
    if (!out.empty()) write_file_atomic(out, js);
    std::fputs(js.c_str(), stdout);
    for (const auto& r : results)
        if (!r.passed) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Mean-field and Monte Carlo toolkit for the relativistic Hopfield network "
        "with cyclically correlated patterns"};
    app.require_subcommand(1);

    int P = 5;
    double a = 0.0, T = 1.0;
    SolverConfig solver;
    std::string init_spec = "pure", model_str = "rel", out, heatmap;

    auto* c_solve = app.add_subcommand("solve", "Damped fixed-point solve from one initial state");
    c_solve->add_option("--P", P, "Number of stored patterns")->required();
    c_solve->add_option("--a", a, "Temporal correlation strength in [0,1]")->required();
    c_solve->add_option("--T", T, "Temperature (0 switches tanh to sign)")->required();
    c_solve->add_option("--init", init_spec,
                        "pure|symmetric|correlated|noisy:<delta>|zero|file:<path>")
        ->capture_default_str();
    c_solve->add_option("--model", model_str, "rel (relativistic) or cl (classical)")
        ->capture_default_str();
    c_solve->add_option("--out", out, "Also write the JSON to this file (atomic)");
    add_solver_flags(c_solve, solver);

    std::string t_text, a_text;
    bool multi_start_flag = false;
    std::string sweep_init, sweep_out = "sweep.csv";
    auto* c_sweep = app.add_subcommand("sweep", "Phase classification over a (T,a) grid");
    c_sweep->add_option("--P", P, "Number of stored patterns")->required();
    c_sweep->add_option("--T", t_text, "Temperature range min:max:steps (or single value)")
        ->required();
    c_sweep->add_option("--a", a_text, "Correlation range min:max:steps (or single value)")
        ->required();
    c_sweep->add_option("--init", sweep_init,
                        "Single starting state for every cell (default: multi-start set)");
    c_sweep->add_flag("--multi-start", multi_start_flag,
                      "Use the full default start set (default when --init is absent)");
    c_sweep->add_option("--out", sweep_out, "Sweep CSV path")->capture_default_str();
    c_sweep->add_option("--heatmap", heatmap, "Optional PPM heatmap of max|M|");
    add_solver_flags(c_sweep, solver);

    auto* c_spectrum = app.add_subcommand("spectrum", "Eigendecomposition of the correlation matrix");
    c_spectrum->add_option("--P", P, "Matrix dimension")->required();
    c_spectrum->add_option("--a", a, "Temporal correlation strength in [0,1]")->required();
    c_spectrum->add_option("--out", out, "Also write the JSON to this file (atomic)");

    int mc_n = 0;
    long mc_sweeps = 400, mc_burn_in = 200, mc_measure_every = 1;
    std::uint64_t seed = 1;
    std::string rule_str = "glauber", spin_init = "aligned", mc_out;
    auto* c_mc = app.add_subcommand("mc", "Single-spin-flip Monte Carlo trajectory");
    c_mc->add_option("--P", P, "Number of stored patterns")->required();
    c_mc->add_option("--a", a, "Temporal correlation strength in [0,1]")->required();
    c_mc->add_option("--T", T, "Temperature (0 = zero-temperature dynamics)")->required();
    c_mc->add_option("--N", mc_n, "Neuron count")->required();
    c_mc->add_option("--sweeps", mc_sweeps, "Total sweeps (N proposed flips each)")
        ->capture_default_str();
    c_mc->add_option("--burn-in", mc_burn_in, "Sweeps discarded before measuring")
        ->capture_default_str();
    c_mc->add_option("--measure-every", mc_measure_every, "Sweeps between measurements")
        ->capture_default_str();
    c_mc->add_option("--seed", seed, "Master seed (patterns and dynamics streams)")
        ->capture_default_str();
    c_mc->add_option("--rule", rule_str, "glauber or metropolis")->capture_default_str();
    c_mc->add_option("--spin-init", spin_init, "aligned (to pattern 1) or random")
        ->capture_default_str();
    c_mc->add_option("--out", mc_out, "Trajectory CSV path (default: stdout)");

    std::vector<std::string> suites;
    auto* c_check = app.add_subcommand("check", "Fixed-seed verification suites");
    c_check->add_option("--suite", suites, "tc|spectrum|stationarity|subadd|selfavg (default all)")
        ->delimiter(',');
    c_check->add_option("--out", out, "Also write the JSON report to this file (atomic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (c_solve->parsed()) return run_solve(P, a, T, init_spec, model_str, solver, out);
        if (c_sweep->parsed())
            return run_sweep(P, t_text, a_text, sweep_init, multi_start_flag, solver, sweep_out,
                             heatmap);
        if (c_spectrum->parsed()) return run_spectrum(P, a, out);
        if (c_mc->parsed())
            return run_mc(P, a, T, mc_n, mc_sweeps, mc_burn_in, mc_measure_every, seed, rule_str,
                          spin_init, mc_out);
        if (c_check->parsed()) return run_check(suites, out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
