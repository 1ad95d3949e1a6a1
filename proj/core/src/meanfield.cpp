#include "hopcorr/meanfield.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hopcorr/correlation.hpp"
#include "hopcorr/io_util.hpp"

namespace hopcorr {

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d += x[i] * y[i];
    return d;
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// sign with sign(0) = 0: keeps zero-temperature moments exact dyadic
// rationals (sums of +-1 terms divided by a power of two).
double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void check_m(const Magnetization& M, int P, const char* who) {
    if (static_cast<int>(M.size()) != P)
        throw std::invalid_argument(std::string(who) + ": M length != P");
    if (P > kQuenchedCap)
        throw std::invalid_argument(std::string(who) + ": P exceeds quenched-average cap");
}

// T_mu = E[xi_mu t(xi.h)] with t = tanh(scale .) at finite beta, sign at
// beta = inf. The integrand is even under xi -> -xi, so xi_{P-1} is pinned to
// +1 and the sum runs over 2^{P-1} masks; correctness is defined by the full
// 2^P average, which this equals exactly.
std::vector<double> tanh_moments(int P, const std::vector<double>& h, double scale,
                                 bool zero_temp) {
    std::vector<double> T(static_cast<std::size_t>(P), 0.0);
    std::vector<int> xi(static_cast<std::size_t>(P), -1);
    xi[P - 1] = 1;
    const std::uint64_t half = 1ULL << (P - 1);
    for (std::uint64_t mask = 0; mask < half; ++mask) {
        for (int mu = 0; mu < P - 1; ++mu) xi[mu] = ((mask >> mu) & 1) ? 1 : -1;
        double field = 0.0;
        for (int mu = 0; mu < P; ++mu) field += xi[mu] * h[mu];
        const double t = zero_temp ? sign0(field) : std::tanh(scale * field);
        for (int mu = 0; mu < P; ++mu) T[mu] += xi[mu] * t;
    }
    const double inv = 1.0 / static_cast<double>(half);
    for (auto& v : T) v *= inv;  // exact when half is a power of two and T integral
    return T;
}

}  // namespace

double quenched_avg(int P, const std::function<double(std::span<const int>)>& f) {
    if (P < 1 || P > kQuenchedCap)
        throw std::invalid_argument("quenched_avg: P outside [1, cap]");
    std::vector<int> xi(static_cast<std::size_t>(P));
    const std::uint64_t total = 1ULL << P;
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int mu = 0; mu < P; ++mu) xi[mu] = ((mask >> mu) & 1) ? 1 : -1;
        sum += f(std::span<const int>(xi.data(), xi.size()));
    }
    return sum / static_cast<double>(total);
}

double pressure(const Magnetization& M, const ModelParams& params) {
    params.validate();
    check_m(M, params.P, "pressure");
    if (params.zero_temperature()) return std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> h = apply_x(M, params.a);
    const double s2 = 1.0 + dot(M, h);
    if (!(s2 > 0.0)) throw std::domain_error("pressure: 1 + M^T X M must be positive");
    const double s = std::sqrt(s2);
    const double scale = params.beta / s;
    double avg = 0.0;
    {
        // Same parity reduction as the moments: log cosh is even in the field.
        std::vector<int> xi(static_cast<std::size_t>(params.P), -1);
        xi[params.P - 1] = 1;
        const std::uint64_t half = 1ULL << (params.P - 1);
        for (std::uint64_t mask = 0; mask < half; ++mask) {
            for (int mu = 0; mu < params.P - 1; ++mu) xi[mu] = ((mask >> mu) & 1) ? 1 : -1;
            double field = 0.0;
            for (int mu = 0; mu < params.P; ++mu) field += xi[mu] * h[mu];
            avg += log_cosh(scale * field);
        }
        avg /= static_cast<double>(half);
    }
    return std::numbers::ln2 + avg + params.beta / s;
}

RelRhsEval eval_rhs_rel_corr(const Magnetization& M, const ModelParams& params) {
    params.validate();
    check_m(M, params.P, "rhs_rel_corr");
    const std::vector<double> h = apply_x(M, params.a);
    const double s2 = 1.0 + dot(M, h);
    if (!(s2 > 0.0)) throw std::domain_error("rhs_rel_corr: 1 + M^T X M must be positive");
    const double s = std::sqrt(s2);
    const std::vector<double> T =
        tanh_moments(params.P, h, params.beta / s, params.zero_temperature());
    RelRhsEval ev;
    ev.denominator = 1.0 + dot(h, T);
    ev.M_next.resize(static_cast<std::size_t>(params.P));
    for (int mu = 0; mu < params.P; ++mu) ev.M_next[mu] = s2 * T[mu] / ev.denominator;
    return ev;
}

Magnetization rhs_rel_corr(const Magnetization& M, const ModelParams& params) {
    RelRhsEval ev = eval_rhs_rel_corr(M, params);
    if (std::abs(ev.denominator) < 1e-10)
        throw std::domain_error("rhs_rel_corr: near-singular denominator");
    return std::move(ev.M_next);
}

Magnetization rhs_cl_corr(const Magnetization& M, const ModelParams& params) {
    params.validate();
    check_m(M, params.P, "rhs_cl_corr");
    const std::vector<double> h = apply_x(M, params.a);
    return tanh_moments(params.P, h, params.beta, params.zero_temperature());
}

FixedPointResult solve(const ModelParams& params, const Magnetization& init,
                       const SolverConfig& cfg, Model model) {
    params.validate();
    if (static_cast<int>(init.size()) != params.P)
        throw std::invalid_argument("solve: init length != P");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
        throw std::invalid_argument("solve: damping must lie in (0, 1]");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
    if (cfg.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");

    FixedPointResult res;
    res.M = init;
    double residual = std::numeric_limits<double>::infinity();
    long it = 0;
    try {
        while (it < cfg.max_iter) {
            Magnetization next;
            if (model == Model::RelCorr) {
                RelRhsEval ev = eval_rhs_rel_corr(res.M, params);
                if (ev.denominator < res.min_denominator) res.min_denominator = ev.denominator;
                if (ev.denominator < 1.0 - 1e-9) ++res.denominator_violations;
                if (std::abs(ev.denominator) < 1e-10) break;  // M_next is garbage, stop here
                next = std::move(ev.M_next);
            } else {
                next = rhs_cl_corr(res.M, params);
            }
            ++it;
            double delta = 0.0;
            for (int mu = 0; mu < params.P; ++mu) {
                const double updated =
                    (1.0 - cfg.damping) * res.M[mu] + cfg.damping * next[mu];
                delta = std::max(delta, std::abs(updated - res.M[mu]));
                res.M[mu] = updated;
            }
            residual = delta;
            if (delta <= cfg.tol) {
                res.converged = true;
                break;
            }
        }
    } catch (const std::exception&) {
        res.converged = false;  // divergent iterate left the physical region
    }
    res.iterations = it;
    res.residual = residual;
    res.pressure = std::numeric_limits<double>::quiet_NaN();
    if (model == Model::RelCorr && !params.zero_temperature()) {
        try {
            res.pressure = pressure(res.M, params);
        } catch (const std::exception&) {
        }
    }
    return res;
}

double critical_temperature(double a) { return 1.0 + 2.0 * a; }

Magnetization grad_pressure_fd(const Magnetization& M, const ModelParams& params, double step) {
    Magnetization grad(M.size());
    Magnetization probe = M;
    for (std::size_t mu = 0; mu < M.size(); ++mu) {
        probe[mu] = M[mu] + step;
        const double up = pressure(probe, params);
        probe[mu] = M[mu] - step;
        const double dn = pressure(probe, params);
        probe[mu] = M[mu];
        grad[mu] = (up - dn) / (2.0 * step);
    }
    return grad;
}

std::string fixed_point_to_json(const FixedPointResult& res, const ModelParams& params,
                                Model model) {
    std::ostringstream out;
    out << "{\n  \"P\": " << params.P << ",\n  \"a\": " << fmt17(params.a)
        << ",\n  \"T\": " << fmt17(params.temperature()) << ",\n  \"model\": \""
        << to_string(model) << "\",\n  \"init_label\": \"" << json_escape(res.init_label)
        << "\",\n  \"M\": [";
    for (std::size_t mu = 0; mu < res.M.size(); ++mu) {
        if (mu) out << ", ";
        out << fmt17(res.M[mu]);
    }
    out << "],\n  \"pressure\": " << json_number(res.pressure)
        << ",\n  \"iterations\": " << res.iterations
        << ",\n  \"converged\": " << (res.converged ? "true" : "false")
        << ",\n  \"residual\": " << json_number(res.residual) << "\n}\n";
    return out.str();
}

}  // namespace hopcorr
