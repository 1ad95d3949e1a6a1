#pragma once

#include <string>
#include <vector>

#include "hopcorr/patterns.hpp"

namespace hopcorr {

// Cyclic temporal-correlation matrix: ones on the diagonal, a at (mu, mu+-1
// mod P). P=2 gets 2a off-diagonal and P=1 collapses to [1+2a] because both
// neighbours coincide.
struct CorrelationMatrix {
    int P = 0;
    double a = 0.0;
    std::vector<double> dense;  // row-major P x P

    double at(int r, int c) const { return dense[static_cast<std::size_t>(r) * P + c]; }
};

CorrelationMatrix build_x(int P, double a);

// y = X m without forming X: y_mu = m_mu + a (m_{mu+1} + m_{mu-1}).
std::vector<double> apply_x(const std::vector<double>& m, double a);

double closed_form_eigenvalue(int P, double a, int k);  // 1 + 2a cos(2 pi k / P)

// Closed-form characteristic polynomial of X evaluated at lambda; complex
// intermediates appear when phi^2 < a^2 but the result is real.
double char_poly_value(int P, double a, double lambda);

struct Spectrum {
    int P = 0;
    double a = 0.0;
    std::vector<double> eigenvalues;   // sorted descending
    std::vector<double> eigenvectors;  // row-major, column k = eigenvector of eigenvalues[k]
    std::vector<double> sqrt_d;        // sqrt(eigenvalues), empty unless all positive

    double vec(int r, int k) const { return eigenvectors[static_cast<std::size_t>(r) * P + k]; }
};

// Dense symmetric eigendecomposition, eigenvalues descending. Degenerate
// clusters are canonicalized against the discrete cosine/sine basis (standard
// basis when the cluster spans the whole space, i.e. X = c I) so the
// decomposition is reproducible across runs and platforms.
Spectrum spectrum(const CorrelationMatrix& X);

struct RotatedPatterns {
    int N = 0;
    int P = 0;
    std::vector<double> tilde;  // row-major N x P

    double at(int i, int rho) const { return tilde[static_cast<std::size_t>(i) * P + rho]; }
};

// xi~ = sqrt(D) U^T xi per neuron row. Throws std::domain_error when any
// eigenvalue <= 1e-12 (the rotation needs a strictly positive spectrum).
RotatedPatterns rotate_patterns(const PatternSet& patterns, const Spectrum& spec);

// JSON export {P, a, eigenvalues[], formula_residuals[]}; residual k is
// |lambda_k - closed form| after sorting both descending.
std::string spectrum_to_json(const Spectrum& spec);

}  // namespace hopcorr
