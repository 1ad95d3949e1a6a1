#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopcorr/meanfield.hpp"

namespace hopcorr {

enum class PhaseLabel { Ergodic, Symmetric, Retrieval, Correlated, Unclassified };
enum class Sublabel { None, R1, R2 };

std::string to_string(PhaseLabel label);
std::string to_string(Sublabel sub);

// Classification thresholds. zero_eps here is looser than the solver's:
// finite-temperature retrieval states carry genuine satellite overlaps of
// order 1e-4..1e-3 that must still read as "zero" for labeling purposes.
inline constexpr double kClassifyZeroEps = 1e-2;
inline constexpr double kSymEps = 1e-4;
inline constexpr double kPressureTieTol = 1e-9;

PhaseLabel classify(const Magnetization& M, double zero_eps = kClassifyZeroEps,
                    double sym_eps = kSymEps);

using NamedInit = std::pair<std::string, Magnetization>;

// {pure, symmetric, correlated ansatz, noisy pure (delta 0.15/0.20/0.25), zero}.
std::vector<NamedInit> default_init_set(int P, double a);

// Hierarchical ansatz: hard-coded vectors for P in {3,5,7,9}, otherwise one
// zero-temperature classical iteration from the pure state at this a.
Magnetization correlated_ansatz(int P, double a);

struct PhasePoint {
    double T = 0.0;
    double a = 0.0;
    FixedPointResult best;
    PhaseLabel label = PhaseLabel::Unclassified;
    Sublabel sublabel = Sublabel::None;
    std::vector<FixedPointResult> all_solutions;  // deduplicated, each tagged with init_label
};

// Solves from every init, deduplicates up to cyclic/reflection symmetry,
// selects the pressure argmax (ties broken toward larger max|M|), classifies.
PhasePoint multi_start(const ModelParams& params, const SolverConfig& cfg,
                       const std::vector<NamedInit>& init_set = {},
                       double classify_zero_eps = kClassifyZeroEps, double sym_eps = kSymEps);

struct SweepGrid {
    double T_min = 0.05, T_max = 3.0;
    int T_steps = 2;
    double a_min = 0.0, a_max = 1.0;
    int a_steps = 2;
    int P = 1;
    std::vector<NamedInit> init_set;  // empty = default multi-start set

    void validate() const;  // steps >= 1; single-step axes pinned at min
    double T_at(int r) const;
    double a_at(int c) const;
};

// One PhasePoint per cell, row-major (T outer ascending, a inner ascending).
// Cells run data-parallel; ordering of the result is deterministic.
std::vector<PhasePoint> sweep(const SweepGrid& grid, const SolverConfig& cfg);

// Bisection on the indicator max|M| >= cfg.zero_eps from the symmetric init,
// bracket [0.5, 3.5]. Throws std::runtime_error if the bracket has no sign
// change.
double find_tc(double a, int P, const SolverConfig& cfg, double T_resolution);

struct CurvePoint {
    double T = 0.0;
    Magnetization M;  // stimulated component first (index 0)
};
std::vector<CurvePoint> magnetization_curves(double a, int P, const std::vector<double>& T_range,
                                             const SolverConfig& cfg);

// CSV columns: T, a, label, sublabel, pressure, converged, M_1..M_P, max_abs_M.
std::string sweep_to_csv(const std::vector<PhasePoint>& points, const SweepGrid& grid,
                         const std::vector<std::string>& meta = {});

// Binary PPM (P6), grayscale = round(255 min(1, max|M|)), T down, a right.
std::string sweep_to_ppm(const std::vector<PhasePoint>& points, const SweepGrid& grid);

}  // namespace hopcorr
