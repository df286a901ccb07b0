#ifndef JACOBILAB_DYNAMICS_HPP
#define JACOBILAB_DYNAMICS_HPP

#include "jacobilab/params.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace jlab {

/// Simulated trajectories of the particle system on a stored time grid.
/// states is path-major: states[(path * grid.size() + k) * N + i].
/// Regenerating with the same seed and metadata is bit-for-bit identical
/// for any worker count.
struct PathEnsemble {
    std::vector<double> grid; // stored times, grid[0] == 0
    std::size_t n_paths = 0;
    int n_particles = 0;
    std::vector<double> states;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double kappa = 0.0;
    double p = 0.0;
    double q = 0.0;
    bool normalized = true;
    double boundary_eps = 0.0;
    std::uint64_t tie_fixes = 0; // pre-step spreadings applied

    std::span<const double> state(std::size_t path, std::size_t k) const {
        return {states.data() + (path * grid.size() + k) * n_particles,
                static_cast<std::size_t>(n_particles)};
    }
};

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

/// Drift of the NORMALIZED process:
/// (p-q) - (p+q) x_i + 2 sum_{j!=i} (1 - x_i x_j)/(x_i - x_j).
/// Throws std::domain_error on tied coordinates.
std::vector<double> drift(const Params& params, std::span<const double> x);

/// Same drift in the factorized form
/// 2(1-x_i^2) [ (p-N+1)/(2(x_i+1)) + (q-N+1)/(2(x_i-1)) + sum_{j!=i} 1/(x_i-x_j) ].
std::vector<double> drift_factorized(const Params& params, std::span<const double> x);

/// One Euler-Maruyama step of the normalized process, followed by the
/// boundary policy (clamp to [-1+eps, 1-eps], sort ascending). noise holds
/// N standard normals; ignored when kappa is infinite.
std::vector<double> euler_step(const Params& params, std::span<const double> x,
                               double dt, std::span<const double> noise);

/// M Euler-Maruyama trajectories stored at store_times (snapped to the step
/// grid). normalized=false runs the original SDE (drift scaled by kappa,
/// diffusion sqrt(2(1-x^2))). Per-path randomness is keyed by
/// (seed, path, step), so output is independent of n_threads.
PathEnsemble simulate(const Params& params, std::span<const double> x0,
                      std::span<const double> store_times, double dt,
                      std::size_t n_paths, std::uint64_t seed,
                      bool normalized = true, int n_threads = 1);

/// Classical RK4 for the kappa = infinity ODE dx/dt = drift(x); halves h and
/// retries (up to 6 times) if a step produces tied coordinates.
OdeTrajectory ode_integrate(const Params& params, std::span<const double> x0,
                            double t_max, double h);

/// L_k f at x for f = sum_m esym_coeffs[m] e_m. The pure second derivatives
/// of e_m vanish, so only the first-order part contributes.
double apply_generator(const MultiplicityParams& k, std::span<const double> esym_coeffs,
                       std::span<const double> x);

} // namespace jlab

#endif
