#include "jacobilab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace jlab {

Params convert_k_to_pq(const MultiplicityParams& k, int n_particles) {
    if (!(k.k3 > 0.0))
        throw std::domain_error("convert_k_to_pq: k3 must be positive");
    Params params;
    params.n_particles = n_particles;
    params.kappa = k.k3;
    params.q = n_particles - 1 + (1.0 + 2.0 * k.k1 + 2.0 * k.k2) / (2.0 * k.k3);
    params.p = n_particles - 1 + (1.0 + 2.0 * k.k2) / (2.0 * k.k3);
    return params;
}

MultiplicityParams convert_pq_to_k(const Params& params) {
    if (!(params.kappa > 0.0) || std::isinf(params.kappa))
        throw std::domain_error("convert_pq_to_k: kappa must be positive and finite");
    const int n = params.n_particles;
    MultiplicityParams k;
    k.k3 = params.kappa;
    k.k2 = ((params.p - (n - 1)) * 2.0 * params.kappa - 1.0) / 2.0;
    k.k1 = (params.q - params.p) * params.kappa;
    return k;
}

std::pair<double, double> alpha_beta(const Params& params) {
    return {params.q - params.n_particles, params.p - params.n_particles};
}

double rho_component(const MultiplicityParams& k, int n_particles, int i) {
    return (k.k1 + 2.0 * k.k2 + 2.0 * k.k3 * (n_particles - i)) / 2.0;
}

RegimeReport validate(const Params& params) {
    RegimeReport r;
    const double n = params.n_particles;
    const double inv_kappa = std::isinf(params.kappa) ? 0.0 : 1.0 / params.kappa;
    r.valid = params.kappa > 0.0 && params.p > n - 1 + inv_kappa && params.q > n - 1 + inv_kappa;
    r.zeros_start_ok = params.p > n - 1 && params.q > n - 1;
    r.nonattainment = params.kappa >= 1.0 && params.p >= n - 1 + 2.0 * inv_kappa &&
                      params.q >= n - 1 + 2.0 * inv_kappa;
    return r;
}

} // namespace jlab
