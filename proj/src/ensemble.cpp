#include "jacobilab/ensemble.hpp"

#include "jacobilab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jlab {

double log_density_unnormalized(const MultiplicityParams& k, std::span<const double> x) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    const double a1 = k.k1 + k.k2 - 0.5;
    const double a2 = k.k2 - 0.5;
    double logp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > -1.0) || !(x[i] < 1.0)) return neg_inf;
        logp += a1 * std::log(1.0 - x[i]) + a2 * std::log(1.0 + x[i]);
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double gap = std::abs(x[i] - x[j]);
            if (gap == 0.0) return neg_inf;
            logp += 2.0 * k.k3 * std::log(gap);
        }
    }
    return logp;
}

EnsembleSample mcmc_sample(const MultiplicityParams& k, int n_particles, std::size_t n_draws,
                           std::uint64_t seed, const McmcTuning& tuning) {
    if (!(k.k3 > 0.0) || !(k.k2 > -0.5) || !(k.k1 + k.k2 > -0.5))
        throw std::domain_error("mcmc_sample: parameters outside the stationary regime");

    const auto np = static_cast<std::size_t>(n_particles);
    EnsembleSample out;
    out.n_particles = n_particles;
    out.n_draws = n_draws;
    out.seed = seed;
    out.burn_in = tuning.burn_in;
    out.thinning = std::max<std::size_t>(1, tuning.thinning);
    out.draws.reserve(n_draws * np);

    // equispaced interior start
    std::vector<double> x(np);
    for (std::size_t i = 0; i < np; ++i)
        x[i] = -1.0 + 2.0 * (i + 1.0) / (np + 1.0);
    double logp = log_density_unnormalized(k, x);

    double scale = tuning.initial_scale;
    const std::size_t total = tuning.burn_in + n_draws * out.thinning;
    std::vector<double> prop(np);
    std::size_t accepted = 0, accepted_window = 0, window = 0;

    for (std::size_t iter = 0; iter < total; ++iter) {
        for (std::size_t i = 0; i < np; ++i)
            prop[i] = x[i] + scale * rng::gaussian(seed, 0, iter, i);
        std::sort(prop.begin(), prop.end());
        const double logp_new = log_density_unnormalized(k, prop);
        const double u = rng::uniform(seed, 0, iter, 2 * np);
        if (logp_new - logp > std::log(u)) {
            x = prop;
            logp = logp_new;
            ++accepted;
            ++accepted_window;
        }
        if (iter < tuning.burn_in) {
            // scale is tuned only here; frozen once sampling starts
            if (++window == 500) {
                const double rate = accepted_window / 500.0;
                if (rate > 0.35) scale *= 1.3;
                else if (rate < 0.25) scale /= 1.3;
                accepted_window = 0;
                window = 0;
            }
        } else if ((iter - tuning.burn_in + 1) % out.thinning == 0) {
            out.draws.insert(out.draws.end(), x.begin(), x.end());
        }
    }
    out.proposal_scale = scale;
    out.acceptance_rate = total ? static_cast<double>(accepted) / total : 0.0;
    out.n_draws = out.draws.size() / np;
    return out;
}

std::pair<double, double> moment_estimate(
    const EnsembleSample& sample,
    const std::function<double(std::span<const double>)>& observable) {
    const std::size_t s = sample.n_draws;
    if (s < 100)
        throw std::invalid_argument("moment_estimate: need at least 100 draws");
    std::vector<double> vals(s);
    double mean = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        vals[i] = observable(sample.draw(i));
        mean += vals[i];
    }
    mean /= s;

    // batch means over ~sqrt(S) batches absorb the chain autocorrelation
    const auto n_batches = static_cast<std::size_t>(std::floor(std::sqrt(double(s))));
    const std::size_t batch = s / n_batches;
    double var = 0.0;
    for (std::size_t b = 0; b < n_batches; ++b) {
        double bm = 0.0;
        for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) bm += vals[i];
        bm /= batch;
        var += (bm - mean) * (bm - mean);
    }
    var /= (n_batches - 1.0);
    const double se = std::sqrt(var / n_batches);
    return {mean, se};
}

} // namespace jlab
