#include "jacobilab/dynamics.hpp"

#include "jacobilab/rng.hpp"
#include "jacobilab/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace jlab {

namespace {

constexpr double kBoundaryEps = 1e-12;
constexpr double kTieGap = 1e-10;

void check_distinct(std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j])
                throw std::domain_error("drift: tied coordinates");
}

} // namespace

std::vector<double> drift(const Params& params, std::span<const double> x) {
    check_distinct(x);
    const std::size_t n = x.size();
    const double p = params.p, q = params.q;
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = (p - q) - (p + q) * x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            s += 2.0 * (1.0 - x[i] * x[j]) / (x[i] - x[j]);
        }
        d[i] = s;
    }
    return d;
}

std::vector<double> drift_factorized(const Params& params, std::span<const double> x) {
    check_distinct(x);
    const std::size_t n = x.size();
    const double nm1 = static_cast<double>(params.n_particles) - 1.0;
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.5 * (params.p - nm1) / (x[i] + 1.0) + 0.5 * (params.q - nm1) / (x[i] - 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            s += 1.0 / (x[i] - x[j]);
        }
        d[i] = 2.0 * (1.0 - x[i] * x[i]) * s;
    }
    return d;
}

namespace {

// spread near-coincident neighbours before evaluating the singular drift
std::uint64_t spread_ties(std::vector<double>& x) {
    std::uint64_t fixes = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] - x[i - 1] < kTieGap) {
            x[i] = x[i - 1] + kTieGap;
            ++fixes;
        }
    }
    return fixes;
}

void apply_boundary(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, -1.0 + kBoundaryEps, 1.0 - kBoundaryEps);
    std::sort(x.begin(), x.end());
}

std::vector<double> step_impl(const Params& params, std::span<const double> x, double dt,
                              std::span<const double> noise, bool normalized,
                              std::uint64_t* fixes) {
    std::vector<double> y(x.begin(), x.end());
    const std::uint64_t f = spread_ties(y);
    if (fixes) *fixes += f;
    const auto d = drift(params, y);
    const double drift_scale = normalized ? 1.0 : params.kappa;
    const bool deterministic = std::isinf(params.kappa);
    const double diff_scale =
        normalized ? (deterministic ? 0.0 : std::sqrt(2.0 / params.kappa)) : std::sqrt(2.0);
    const double sq_dt = std::sqrt(dt);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double v = y[i] + drift_scale * d[i] * dt;
        if (diff_scale != 0.0)
            v += diff_scale * std::sqrt(std::max(0.0, 1.0 - y[i] * y[i])) * sq_dt * noise[i];
        y[i] = v;
    }
    apply_boundary(y);
    return y;
}

} // namespace

std::vector<double> euler_step(const Params& params, std::span<const double> x,
                               double dt, std::span<const double> noise) {
    return step_impl(params, x, dt, noise, /*normalized=*/true, nullptr);
}

PathEnsemble simulate(const Params& params, std::span<const double> x0,
                      std::span<const double> store_times, double dt,
                      std::size_t n_paths, std::uint64_t seed,
                      bool normalized, int n_threads) {
    const auto report = validate(params);
    if (!report.valid)
        throw std::invalid_argument("simulate: invalid parameters");
    if (store_times.empty() || dt <= 0.0)
        throw std::invalid_argument("simulate: empty grid or bad dt");

    const int np = params.n_particles;
    PathEnsemble ens;
    ens.n_paths = n_paths;
    ens.n_particles = np;
    ens.seed = seed;
    ens.dt = dt;
    ens.kappa = params.kappa;
    ens.p = params.p;
    ens.q = params.q;
    ens.normalized = normalized;
    ens.boundary_eps = kBoundaryEps;

    // snap store times onto the step grid; always keep t = 0 so that
    // grid[0] == 0, and deduplicate after snapping
    std::vector<std::size_t> store_steps{0};
    for (double t : store_times) {
        if (t < 0.0) throw std::invalid_argument("simulate: negative store time");
        store_steps.push_back(static_cast<std::size_t>(std::llround(t / dt)));
    }
    std::sort(store_steps.begin(), store_steps.end());
    store_steps.erase(std::unique(store_steps.begin(), store_steps.end()), store_steps.end());
    for (std::size_t k : store_steps) ens.grid.push_back(k * dt);
    const std::size_t total_steps = store_steps.back();
    const std::size_t stride = ens.grid.size() * np;
    ens.states.assign(n_paths * stride, 0.0);

    std::vector<std::uint64_t> fixes_per_path(n_paths, 0);

    auto run_path = [&](std::size_t path) {
        std::vector<double> x(x0.begin(), x0.end());
        std::vector<double> noise(np, 0.0);
        std::size_t next_store = 0;
        std::uint64_t fixes = 0;
        auto store = [&](std::size_t k) {
            while (next_store < store_steps.size() && store_steps[next_store] == k) {
                std::copy(x.begin(), x.end(),
                          ens.states.begin() + path * stride + next_store * np);
                ++next_store;
            }
        };
        store(0);
        for (std::size_t step = 1; step <= total_steps; ++step) {
            for (int i = 0; i < np; ++i)
                noise[i] = rng::gaussian(seed, path, step, static_cast<std::uint64_t>(i));
            x = step_impl(params, x, dt, noise, normalized, &fixes);
            store(step);
        }
        fixes_per_path[path] = fixes;
    };

    if (n_threads <= 1) {
        for (std::size_t path = 0; path < n_paths; ++path) run_path(path);
    } else {
        std::vector<std::thread> workers;
        const std::size_t nt = static_cast<std::size_t>(n_threads);
        for (std::size_t w = 0; w < nt; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t path = w; path < n_paths; path += nt) run_path(path);
            });
        }
        for (auto& th : workers) th.join();
    }
    for (std::uint64_t f : fixes_per_path) ens.tie_fixes += f;
    return ens;
}

OdeTrajectory ode_integrate(const Params& params, std::span<const double> x0,
                            double t_max, double h) {
    if (!(params.p > params.n_particles - 1) || !(params.q > params.n_particles - 1))
        throw std::invalid_argument("ode_integrate: need p, q > N-1");
    auto f = [&](const std::vector<double>& x) { return drift(params, x); };

    double step = h;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            OdeTrajectory traj;
            std::vector<double> x(x0.begin(), x0.end());
            traj.times.push_back(0.0);
            traj.states.push_back(x);
            const auto n_steps = static_cast<std::size_t>(std::llround(t_max / step));
            std::vector<double> tmp(x.size());
            for (std::size_t s = 1; s <= n_steps; ++s) {
                const auto k1 = f(x);
                for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * step * k1[i];
                const auto k2 = f(tmp);
                for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * step * k2[i];
                const auto k3 = f(tmp);
                for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + step * k3[i];
                const auto k4 = f(tmp);
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                traj.times.push_back(s * step);
                traj.states.push_back(x);
            }
            return traj;
        } catch (const std::domain_error&) {
            step *= 0.5; // tied coordinates mid-step; retry finer
        }
    }
    throw std::runtime_error("ode_integrate: step reduction budget exhausted");
}

double apply_generator(const MultiplicityParams& k, std::span<const double> esym_coeffs,
                       std::span<const double> x) {
    check_distinct(x);
    const std::size_t n = x.size();
    const auto grad = esym_gradient(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double b = -k.k1 - (1.0 + k.k1 + 2.0 * k.k2) * x[i];
        double inter = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            inter += 1.0 / (x[i] - x[j]);
        }
        b += 2.0 * k.k3 * (1.0 - x[i] * x[i]) * inter;
        double df = 0.0;
        for (std::size_t m = 1; m < esym_coeffs.size() && m <= n; ++m)
            df += esym_coeffs[m] * grad[m][i];
        acc += b * df;
    }
    return acc;
}

} // namespace jlab
