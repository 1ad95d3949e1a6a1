#include "hopcorr/params.hpp"

#include <stdexcept>

namespace hopcorr {

std::string to_string(Model m) { return m == Model::RelCorr ? "rel" : "cl"; }

Model model_from_string(const std::string& s) {
    if (s == "rel" || s == "rel_corr") return Model::RelCorr;
    if (s == "cl" || s == "cl_corr") return Model::ClCorr;
    throw std::invalid_argument("unknown model '" + s + "' (expected rel or cl)");
}

ModelParams ModelParams::from_temperature(int P, double a, double T) {
    if (T < 0.0) throw std::invalid_argument("temperature must be >= 0");
    ModelParams p;
    p.P = P;
    p.a = a;
    p.beta = (T == 0.0) ? std::numeric_limits<double>::infinity() : 1.0 / T;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (P < 1) throw std::invalid_argument("P must be >= 1");
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("a must lie in [0, 1]");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
}

}  // namespace hopcorr
