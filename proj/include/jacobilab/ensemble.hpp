#ifndef JACOBILAB_ENSEMBLE_HPP
#define JACOBILAB_ENSEMBLE_HPP

#include "jacobilab/params.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace jlab {

struct McmcTuning {
    std::size_t burn_in = 10'000;
    std::size_t thinning = 10;
    double initial_scale = 0.25;
};

/// Draws from the stationary beta-Jacobi ensemble. draws is draw-major:
/// draws[(s * N) + i], every row sorted and interior.
struct EnsembleSample {
    int n_particles = 0;
    std::size_t n_draws = 0;
    std::vector<double> draws;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    std::size_t thinning = 0;
    double proposal_scale = 0.0;
    double acceptance_rate = 0.0;

    std::span<const double> draw(std::size_t s) const {
        return {draws.data() + s * n_particles, static_cast<std::size_t>(n_particles)};
    }
};

/// Unnormalized log of the stationary density
/// sum_i [(k1+k2-1/2) log(1-x_i) + (k2-1/2) log(1+x_i)] + 2 k3 sum_{i<j} log|x_i-x_j|.
/// Returns -infinity at the boundary or at tied coordinates.
double log_density_unnormalized(const MultiplicityParams& k, std::span<const double> x);

/// Random-walk Metropolis with coordinate-wise Gaussian proposals followed
/// by sorting; proposal scale auto-tuned during burn-in toward 25-35%
/// acceptance. Throws std::domain_error outside the regime
/// k3 > 0, k2 > -1/2, k1+k2 > -1/2.
EnsembleSample mcmc_sample(const MultiplicityParams& k, int n_particles, std::size_t n_draws,
                           std::uint64_t seed, const McmcTuning& tuning = {});

/// Batch-means estimate with autocorrelation-aware standard error.
/// Throws std::invalid_argument for fewer than 100 draws.
std::pair<double, double> moment_estimate(
    const EnsembleSample& sample,
    const std::function<double(std::span<const double>)>& observable);

} // namespace jlab

#endif
