#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hopcorr/params.hpp"

namespace hopcorr {

using Magnetization = std::vector<double>;

inline constexpr int kQuenchedCap = 20;  // 2^P exact average

// Exact average 2^{-P} sum over xi in {-1,+1}^P of f(xi).
double quenched_avg(int P, const std::function<double(std::span<const int>)>& f);

// log 2 + E log cosh(beta xi.(XM) / s) + beta / s with s = sqrt(1 + M^T X M).
// NaN at zero temperature (the pressure diverges with beta).
// Throws std::domain_error unless 1 + M^T X M > 0.
double pressure(const Magnetization& M, const ModelParams& params);

// Right-hand side of the relativistic self-consistency equation. Throws
// std::domain_error when |denominator| < 1e-10; the solver uses the
// non-throwing evaluator below and records diagnostics instead.
Magnetization rhs_rel_corr(const Magnetization& M, const ModelParams& params);

// Classical counterpart: E[xi^mu tanh(beta xi.(XM))]. At zero temperature
// tanh is replaced by sign with sign(0) = 0, which keeps the averages exact
// dyadic rationals.
Magnetization rhs_cl_corr(const Magnetization& M, const ModelParams& params);

struct RelRhsEval {
    Magnetization M_next;
    double denominator = 1.0;
};
RelRhsEval eval_rhs_rel_corr(const Magnetization& M, const ModelParams& params);

struct SolverConfig {
    double damping = 0.5;    // in (0, 1]
    double tol = 1e-10;      // on ||dM||_inf per iteration
    long max_iter = 100000;
    double zero_eps = 1e-6;  // component treated as zero below this
};

struct FixedPointResult {
    Magnetization M;
    double pressure = 0.0;  // NaN for ClCorr and at zero temperature
    long iterations = 0;
    bool converged = false;
    double residual = 0.0;          // final ||dM||_inf
    std::string init_label;         // filled by callers for reporting
    long denominator_violations = 0;  // iterations with denominator < 1 - 1e-9
    double min_denominator = 1.0;
};

// Damped iteration M <- (1-damping) M + damping rhs(M). Non-convergence and
// near-singular denominators are reported in the result, never thrown.
FixedPointResult solve(const ModelParams& params, const Magnetization& init,
                       const SolverConfig& cfg, Model model = Model::RelCorr);

double critical_temperature(double a);  // 1 + 2a

// Central-difference gradient of pressure(), default step 1e-5.
Magnetization grad_pressure_fd(const Magnetization& M, const ModelParams& params,
                               double step = 1e-5);

// {P, a, T, model, init_label, M[], pressure, iterations, converged, residual}.
std::string fixed_point_to_json(const FixedPointResult& res, const ModelParams& params,
                                Model model);

}  // namespace hopcorr
