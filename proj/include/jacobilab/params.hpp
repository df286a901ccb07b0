#ifndef JACOBILAB_PARAMS_HPP
#define JACOBILAB_PARAMS_HPP

#include <limits>
#include <utility>

namespace jlab {

/// Symbolic kappa for the deterministic (ODE) limit.
inline constexpr double kInfiniteKappa = std::numeric_limits<double>::infinity();

/// Parameters of the Jacobi diffusion in (kappa, p, q) coordinates.
/// kappa may be kInfiniteKappa, in which case 1/kappa is treated as 0.
struct Params {
    int n_particles = 1;
    double kappa = 1.0;
    double p = 0.0;
    double q = 0.0;
};

/// Multiplicity parameters (k1, k2, k3) on the roots e_i, 2e_i, e_i +- e_j.
struct MultiplicityParams {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 1.0;
};

/// Validation flags for a parameter set.
struct RegimeReport {
    bool valid = false;          // kappa > 0 and p, q > N-1+1/kappa
    bool zeros_start_ok = false; // p, q > N-1, i.e. alpha, beta > -1
    bool nonattainment = false;  // kappa >= 1 and p, q >= N-1+2/kappa
};

/// (k1,k2,k3) -> (kappa,p,q). Throws std::domain_error if k3 <= 0.
Params convert_k_to_pq(const MultiplicityParams& k, int n_particles);

/// Inverse of convert_k_to_pq. Throws std::domain_error for kappa <= 0 or infinite.
MultiplicityParams convert_pq_to_k(const Params& params);

/// alpha = q - N, beta = p - N.
std::pair<double, double> alpha_beta(const Params& params);

/// rho(k)_i = (k1 + 2 k2 + 2 k3 (N-i)) / 2, i = 1..N.
double rho_component(const MultiplicityParams& k, int n_particles, int i);

RegimeReport validate(const Params& params);

} // namespace jlab

#endif
