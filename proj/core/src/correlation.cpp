#include "hopcorr/correlation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hopcorr/io_util.hpp"

namespace hopcorr {

namespace {

constexpr double kClusterTol = 1e-7;    // eigenvalues closer than this share an eigenspace
constexpr double kPositiveTol = 1e-12;  // spectrum treated as positive above this

}  // namespace

CorrelationMatrix build_x(int P, double a) {
    if (P < 1) throw std::invalid_argument("build_x: P must be >= 1");
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("build_x: a must lie in [0, 1]");
    CorrelationMatrix X;
    X.P = P;
    X.a = a;
    X.dense.assign(static_cast<std::size_t>(P) * P, 0.0);
    for (int mu = 0; mu < P; ++mu) {
        X.dense[static_cast<std::size_t>(mu) * P + mu] += 1.0;
        // += handles the P<=2 collisions: P=1 puts 2a on the diagonal, P=2
        // stacks both neighbours into the single off-diagonal entry.
        X.dense[static_cast<std::size_t>(mu) * P + (mu + 1) % P] += a;
        X.dense[static_cast<std::size_t>(mu) * P + (mu + P - 1) % P] += a;
    }
    return X;
}

std::vector<double> apply_x(const std::vector<double>& m, double a) {
    const int P = static_cast<int>(m.size());
    std::vector<double> y(m.size());
    for (int mu = 0; mu < P; ++mu)
        y[mu] = m[mu] + a * (m[(mu + 1) % P] + m[(mu + P - 1) % P]);
    return y;
}

double closed_form_eigenvalue(int P, double a, int k) {
    return 1.0 + 2.0 * a * std::cos(2.0 * std::numbers::pi * k / P);
}

double char_poly_value(int P, double a, double lambda) {
    const std::complex<double> phi((1.0 - lambda) / 2.0, 0.0);
    const std::complex<double> root = std::sqrt(phi * phi - a * a);
    const std::complex<double> val =
        std::pow(phi - root, P) + std::pow(phi + root, P);
    const double parity = (P % 2 == 0) ? 1.0 : -1.0;
    return val.real() - 2.0 * parity * std::pow(a, P);
}

Spectrum spectrum(const CorrelationMatrix& X) {
    const int P = X.P;
    Eigen::MatrixXd M(P, P);
    for (int r = 0; r < P; ++r)
        for (int c = 0; c < P; ++c) M(r, c) = X.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");

    // Reorder descending (Eigen returns ascending).
    Eigen::VectorXd lam(P);
    Eigen::MatrixXd U(P, P);
    for (int k = 0; k < P; ++k) {
        lam(k) = es.eigenvalues()(P - 1 - k);
        U.col(k) = es.eigenvectors().col(P - 1 - k);
    }

    // Canonicalize each degenerate cluster by projecting a fixed target basis
    // onto the eigenspace and re-orthonormalizing. The cyclic X is circulant,
    // so cosine/sine vectors span each two-dimensional eigenspace exactly; the
    // full-space cluster (X = c I, i.e. a = 0) instead keeps the standard
    // basis so that U is the identity there.
    int begin = 0;
    while (begin < P) {
        int end = begin + 1;
        while (end < P && std::abs(lam(end) - lam(begin)) < kClusterTol) ++end;
        const int dim = end - begin;
        Eigen::MatrixXd targets(P, dim);
        if (dim == P) {
            targets.setIdentity();
        } else {
            // Match the cluster against the closed-form indices; for a > 0 the
            // cluster is exactly {k, P-k} (or a singleton at k = 0 or P/2).
            int t = 0;
            for (int k = 0; k <= P / 2 && t < dim; ++k) {
                if (std::abs(closed_form_eigenvalue(P, X.a, k) - lam(begin)) >= kClusterTol)
                    continue;
                for (int r = 0; r < P; ++r)
                    targets(r, t) = std::cos(2.0 * std::numbers::pi * k * r / P);
                ++t;
                if (t < dim && k > 0 && 2 * k != P) {
                    for (int r = 0; r < P; ++r)
                        targets(r, t) = std::sin(2.0 * std::numbers::pi * k * r / P);
                    ++t;
                }
            }
            if (t != dim) targets.setZero();  // no closed-form match, keep raw vectors
        }
        if (!targets.isZero(0.0)) {
            const Eigen::MatrixXd block = U.middleCols(begin, dim);
            Eigen::MatrixXd projected = block * (block.transpose() * targets);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(projected);
            Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(P, dim);
            // QR leaves column signs arbitrary; align each with its target.
            bool ok = true;
            for (int j = 0; j < dim; ++j) {
                const double d = Q.col(j).dot(targets.col(j));
                if (std::abs(d) < 1e-8) { ok = false; break; }
                if (d < 0.0) Q.col(j) = -Q.col(j);
            }
            if (ok) U.middleCols(begin, dim) = Q;
        }
        begin = end;
    }

    Spectrum spec;
    spec.P = P;
    spec.a = X.a;
    spec.eigenvalues.assign(lam.data(), lam.data() + P);
    spec.eigenvectors.resize(static_cast<std::size_t>(P) * P);
    for (int r = 0; r < P; ++r)
        for (int k = 0; k < P; ++k) spec.eigenvectors[static_cast<std::size_t>(r) * P + k] = U(r, k);
    if (lam(P - 1) > kPositiveTol) {
        spec.sqrt_d.resize(static_cast<std::size_t>(P));
        for (int k = 0; k < P; ++k) spec.sqrt_d[k] = std::sqrt(lam(k));
    }
    return spec;
}

RotatedPatterns rotate_patterns(const PatternSet& patterns, const Spectrum& spec) {
    if (patterns.P != spec.P) throw std::invalid_argument("rotate_patterns: P mismatch");
    const int P = spec.P;
    if (spec.sqrt_d.empty() || spec.eigenvalues.back() <= kPositiveTol)
        throw std::domain_error("rotate_patterns: spectrum not strictly positive");
    RotatedPatterns rot;
    rot.N = patterns.N;
    rot.P = P;
    rot.tilde.resize(static_cast<std::size_t>(patterns.N) * P);
    for (int i = 0; i < patterns.N; ++i) {
        for (int rho = 0; rho < P; ++rho) {
            double acc = 0.0;
            for (int mu = 0; mu < P; ++mu) acc += spec.vec(mu, rho) * patterns.at(i, mu);
            rot.tilde[static_cast<std::size_t>(i) * P + rho] = spec.sqrt_d[rho] * acc;
        }
    }
    return rot;
}

std::string spectrum_to_json(const Spectrum& spec) {
    std::vector<double> closed(static_cast<std::size_t>(spec.P));
    for (int k = 0; k < spec.P; ++k) closed[k] = closed_form_eigenvalue(spec.P, spec.a, k);
    std::sort(closed.begin(), closed.end(), std::greater<>());
    std::ostringstream out;
    out << "{\n  \"P\": " << spec.P << ",\n  \"a\": " << fmt17(spec.a) << ",\n  \"eigenvalues\": [";
    for (int k = 0; k < spec.P; ++k) {
        if (k) out << ", ";
        out << fmt17(spec.eigenvalues[k]);
    }
    out << "],\n  \"formula_residuals\": [";
    for (int k = 0; k < spec.P; ++k) {
        if (k) out << ", ";
        out << fmt17(std::abs(spec.eigenvalues[k] - closed[k]));
    }
    out << "]\n}\n";
    return out.str();
}

}  // namespace hopcorr
