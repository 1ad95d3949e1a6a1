#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace hopcorr {

enum class Model { RelCorr, ClCorr };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

// One thermodynamic point of the correlated model. beta may be infinity, in
// which case operations switch tanh -> sign (zero-temperature rule).
struct ModelParams {
    int P = 1;
    double a = 0.0;
    double beta = 1.0;

    static ModelParams from_temperature(int P, double a, double T);

    double temperature() const {
        if (beta == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / beta;
    }
    bool zero_temperature() const { return std::isinf(beta); }

    // Throws std::invalid_argument unless P >= 1, 0 <= a <= 1, beta >= 0.
    void validate() const;
};

}  // namespace hopcorr
