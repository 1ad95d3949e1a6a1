#include "hopcorr/phases.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hopcorr/io_util.hpp"

namespace hopcorr {

namespace {

double max_abs(const Magnetization& M) {
    double mx = 0.0;
    for (double v : M) mx = std::max(mx, std::abs(v));
    return mx;
}

// Equality up to cyclic shifts and reflections (X commutes with the dihedral
// group, so orbits of a fixed point are fixed points with the same pressure).
bool equivalent(const Magnetization& A, const Magnetization& B, double tol) {
    const int P = static_cast<int>(A.size());
    if (static_cast<int>(B.size()) != P) return false;
    for (int reflect = 0; reflect < 2; ++reflect) {
        for (int s = 0; s < P; ++s) {
            bool match = true;
            for (int mu = 0; mu < P && match; ++mu) {
                const int idx = reflect ? ((s - mu) % P + P) % P : (mu + s) % P;
                if (std::abs(A[idx] - B[mu]) > tol) match = false;
            }
            if (match) return true;
        }
    }
    return false;
}

}  // namespace

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Ergodic: return "ergodic";
        case PhaseLabel::Symmetric: return "symmetric";
        case PhaseLabel::Retrieval: return "retrieval";
        case PhaseLabel::Correlated: return "correlated";
        default: return "unclassified";
    }
}

std::string to_string(Sublabel sub) {
    switch (sub) {
        case Sublabel::R1: return "R1";
        case Sublabel::R2: return "R2";
        default: return "none";
    }
}

PhaseLabel classify(const Magnetization& M, double zero_eps, double sym_eps) {
    const int P = static_cast<int>(M.size());
    if (P < 1) return PhaseLabel::Unclassified;
    double mx = 0.0, sum = 0.0;
    int jstar = 0, big = 0;
    for (int mu = 0; mu < P; ++mu) {
        const double v = std::abs(M[mu]);
        if (v > mx) {
            mx = v;
            jstar = mu;
        }
        if (v >= zero_eps) ++big;
        sum += M[mu];
    }
    if (mx < zero_eps) return PhaseLabel::Ergodic;
    const double mean = sum / P;
    if (std::abs(mean) >= zero_eps) {
        bool sym = true;
        for (double v : M)
            if (std::abs(v - mean) > sym_eps) {
                sym = false;
                break;
            }
        if (sym) return PhaseLabel::Symmetric;
    }
    if (big == 1) return PhaseLabel::Retrieval;
    // Hierarchical profile: |M| keyed by cyclic distance from the peak must be
    // mirror-symmetric, non-increasing, and carry at least two distinct levels.
    const int dmax = P / 2;
    std::vector<double> level(static_cast<std::size_t>(dmax) + 1, -1.0);
    for (int mu = 0; mu < P; ++mu) {
        const int fwd = ((mu - jstar) % P + P) % P;
        const int d = std::min(fwd, P - fwd);
        const double v = std::abs(M[mu]);
        if (level[d] < 0.0)
            level[d] = v;
        else if (std::abs(level[d] - v) > sym_eps)
            return PhaseLabel::Unclassified;
    }
    double lo = level[0];
    for (int d = 1; d <= dmax; ++d) {
        if (level[d] > level[d - 1] + sym_eps) return PhaseLabel::Unclassified;
        lo = std::min(lo, level[d]);
    }
    if (level[0] - lo > sym_eps) return PhaseLabel::Correlated;
    return PhaseLabel::Unclassified;
}

Magnetization correlated_ansatz(int P, double a) {
    switch (P) {
        case 3: return {1.0 / 2, 1.0 / 2, 1.0 / 2};
        case 5: return {5.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8, 3.0 / 8};
        case 7: return {19.0 / 32, 13.0 / 32, 3.0 / 32, 1.0 / 32, 1.0 / 32, 3.0 / 32, 13.0 / 32};
        case 9:
            return {77.0 / 128, 51.0 / 128, 13.0 / 128, 3.0 / 128, 1.0 / 128,
                    1.0 / 128,  3.0 / 128,  13.0 / 128, 51.0 / 128};
        default: {
            // One noiseless classical step from the pure state already bends
            // toward the hierarchical shape at this correlation strength.
            ModelParams zp;
            zp.P = P;
            zp.a = a;
            zp.beta = std::numeric_limits<double>::infinity();
            Magnetization pure(static_cast<std::size_t>(P), 0.0);
            pure[0] = 1.0;
            return rhs_cl_corr(pure, zp);
        }
    }
}

std::vector<NamedInit> default_init_set(int P, double a) {
    std::vector<NamedInit> set;
    Magnetization pure(static_cast<std::size_t>(P), 0.0);
    pure[0] = 1.0;
    set.emplace_back("pure", pure);
    set.emplace_back("symmetric", Magnetization(static_cast<std::size_t>(P), 0.5));
    set.emplace_back("correlated", correlated_ansatz(P, a));
    for (double delta : {0.15, 0.20, 0.25}) {
        Magnetization noisy(static_cast<std::size_t>(P), delta);
        noisy[0] = 1.0 - delta;
        char label[32];
        std::snprintf(label, sizeof(label), "noisy:%.2f", delta);
        set.emplace_back(label, std::move(noisy));
    }
    set.emplace_back("zero", Magnetization(static_cast<std::size_t>(P), 0.0));
    return set;
}

PhasePoint multi_start(const ModelParams& params, const SolverConfig& cfg,
                       const std::vector<NamedInit>& init_set, double classify_zero_eps,
                       double sym_eps) {
    params.validate();
    std::vector<NamedInit> defaults;
    const std::vector<NamedInit>* inits = &init_set;
    if (init_set.empty()) {
        defaults = default_init_set(params.P, params.a);
        inits = &defaults;
    }
    PhasePoint pt;
    pt.T = params.temperature();
    pt.a = params.a;
    const double dup_tol = 10.0 * cfg.tol;

    FixedPointResult pure_sol;
    bool have_pure_retrieval = false;
    for (const auto& [label, init] : *inits) {
        FixedPointResult r = solve(params, init, cfg, Model::RelCorr);
        r.init_label = label;
        if (label == "pure" && r.converged &&
            classify(r.M, classify_zero_eps, sym_eps) == PhaseLabel::Retrieval) {
            pure_sol = r;
            have_pure_retrieval = true;
        }
        bool dup = false;
        if (r.converged) {
            for (const auto& u : pt.all_solutions)
                if (u.converged && equivalent(u.M, r.M, dup_tol)) {
                    dup = true;
                    break;
                }
        }
        if (!dup) pt.all_solutions.push_back(std::move(r));
    }

    int best = -1;
    for (int i = 0; i < static_cast<int>(pt.all_solutions.size()); ++i) {
        const auto& s = pt.all_solutions[i];
        if (!s.converged || !std::isfinite(s.pressure)) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const double diff = s.pressure - pt.all_solutions[best].pressure;
        if (diff > kPressureTieTol ||
            (diff > -kPressureTieTol && max_abs(s.M) > max_abs(pt.all_solutions[best].M)))
            best = i;
    }
    if (best < 0) {
        // No usable pressure (nothing converged): fall back to the smallest
        // residual so that downstream reporting still has a representative.
        double best_res = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(pt.all_solutions.size()); ++i) {
            if (pt.all_solutions[i].residual < best_res) {
                best_res = pt.all_solutions[i].residual;
                best = i;
            }
        }
        if (best < 0) best = 0;
        pt.best = pt.all_solutions[best];
        pt.label = PhaseLabel::Unclassified;
        return pt;
    }
    pt.best = pt.all_solutions[best];
    pt.label = classify(pt.best.M, classify_zero_eps, sym_eps);
    if (have_pure_retrieval)
        pt.sublabel = equivalent(pt.best.M, pure_sol.M, dup_tol) ? Sublabel::R1 : Sublabel::R2;
    return pt;
}

void SweepGrid::validate() const {
    if (P < 1) throw std::invalid_argument("SweepGrid: P must be >= 1");
    if (T_steps < 1 || a_steps < 1) throw std::invalid_argument("SweepGrid: steps must be >= 1");
    if (!(T_min > 0.0)) throw std::invalid_argument("SweepGrid: T_min must be positive");
    if (T_steps > 1 && !(T_max > T_min))
        throw std::invalid_argument("SweepGrid: T range degenerate");
    if (a_steps > 1 && !(a_max > a_min))
        throw std::invalid_argument("SweepGrid: a range degenerate");
    if (!(a_min >= 0.0 && a_max <= 1.0)) throw std::invalid_argument("SweepGrid: a outside [0, 1]");
}

double SweepGrid::T_at(int r) const {
    return T_steps == 1 ? T_min : T_min + (T_max - T_min) * r / (T_steps - 1);
}

double SweepGrid::a_at(int c) const {
    return a_steps == 1 ? a_min : a_min + (a_max - a_min) * c / (a_steps - 1);
}

std::vector<PhasePoint> sweep(const SweepGrid& grid, const SolverConfig& cfg) {
    grid.validate();
    const int n = grid.T_steps * grid.a_steps;
    std::vector<PhasePoint> points(static_cast<std::size_t>(n));
    parallel_for(n, [&](int idx) {
        const int r = idx / grid.a_steps;
        const int c = idx % grid.a_steps;
        const ModelParams params =
            ModelParams::from_temperature(grid.P, grid.a_at(c), grid.T_at(r));
        points[idx] = multi_start(params, cfg, grid.init_set);
    });
    return points;
}

double find_tc(double a, int P, const SolverConfig& cfg, double T_resolution) {
    if (!(T_resolution > 0.0)) throw std::invalid_argument("find_tc: resolution must be > 0");
    const auto ordered = [&](double T) {
        const ModelParams params = ModelParams::from_temperature(P, a, T);
        const FixedPointResult r =
            solve(params, Magnetization(static_cast<std::size_t>(P), 0.5), cfg, Model::RelCorr);
        return max_abs(r.M) >= cfg.zero_eps;
    };
    double lo = 0.5, hi = 3.5;
    if (!ordered(lo) || ordered(hi))
        throw std::runtime_error("find_tc: no ordered/disordered change inside [0.5, 3.5]");
    while (hi - lo > T_resolution) {
        const double mid = 0.5 * (lo + hi);
        (ordered(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CurvePoint> magnetization_curves(double a, int P, const std::vector<double>& T_range,
                                             const SolverConfig& cfg) {
    std::vector<CurvePoint> out(T_range.size());
    Magnetization pure(static_cast<std::size_t>(P), 0.0);
    pure[0] = 1.0;
    parallel_for(static_cast<int>(T_range.size()), [&](int i) {
        const ModelParams params = ModelParams::from_temperature(P, a, T_range[i]);
        out[i].T = T_range[i];
        out[i].M = solve(params, pure, cfg, Model::RelCorr).M;
    });
    return out;
}

std::string sweep_to_csv(const std::vector<PhasePoint>& points, const SweepGrid& grid,
                         const std::vector<std::string>& meta) {
    std::ostringstream out;
    for (const auto& line : meta) out << "# " << line << '\n';
    out << "T,a,label,sublabel,pressure,converged";
    for (int mu = 1; mu <= grid.P; ++mu) out << ",M_" << mu;
    out << ",max_abs_M\n";
    for (const auto& pt : points) {
        out << fmt17(pt.T) << ',' << fmt17(pt.a) << ',' << to_string(pt.label) << ','
            << to_string(pt.sublabel) << ',' << fmt17(pt.best.pressure) << ','
            << (pt.best.converged ? 1 : 0);
        for (double v : pt.best.M) out << ',' << fmt17(v);
        out << ',' << fmt17(max_abs(pt.best.M)) << '\n';
    }
    return out.str();
}

std::string sweep_to_ppm(const std::vector<PhasePoint>& points, const SweepGrid& grid) {
    if (static_cast<int>(points.size()) != grid.T_steps * grid.a_steps)
        throw std::invalid_argument("sweep_to_ppm: points do not match grid");
    std::ostringstream out;
    out << "P6\n"
        << "# gray = round(255*min(1,max|M|)); rows: T from " << fmt17(grid.T_min) << " to "
        << fmt17(grid.T_max) << " top to bottom; cols: a from " << fmt17(grid.a_min) << " to "
        << fmt17(grid.a_max) << " left to right\n"
        << grid.a_steps << ' ' << grid.T_steps << "\n255\n";
    for (const auto& pt : points) {
        const double g = std::min(1.0, max_abs(pt.best.M));
        const auto byte = static_cast<unsigned char>(std::lround(255.0 * g));
        out << byte << byte << byte;
    }
    return out.str();
}

}  // namespace hopcorr
