#include "jacobilab/harness.hpp"

#include "jacobilab/dynamics.hpp"
#include "jacobilab/ensemble.hpp"
#include "jacobilab/jacobi1d.hpp"
#include "jacobilab/martingale.hpp"
#include "jacobilab/rng.hpp"
#include "jacobilab/sympoly.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace jlab {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json double_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return json(v);
}

double double_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInfiniteKappa;
        if (s == "-inf") return -kInfiniteKappa;
        return std::stod(s);
    }
    return j.get<double>();
}

double default_dt(double p, double q) {
    return std::min(1e-3, 0.1 / (p + q));
}

} // namespace

Params effective_params(const ExperimentConfig& config) {
    if (config.k)
        return convert_k_to_pq(*config.k, config.n_particles);
    return Params{config.n_particles, config.kappa, config.p, config.q};
}

ReportRow make_row(std::string name, double t, double estimate, double stderr_,
                   double predicted, double tolerance, double z_max,
                   bool informational) {
    ReportRow row;
    row.name = std::move(name);
    row.t = t;
    row.estimate = estimate;
    row.stderr_ = stderr_;
    row.predicted = predicted;
    row.tolerance = tolerance;
    row.informational = informational;
    const double scale = std::max(stderr_, tolerance / z_max);
    row.zscore = (scale > 0.0) ? (estimate - predicted) / scale : 0.0;
    return row;
}

ExperimentConfig config_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ExperimentConfig c;
    if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
    if (j.contains("n_particles")) c.n_particles = j["n_particles"].get<int>();
    if (j.contains("kappa")) c.kappa = double_from_json(j["kappa"]);
    if (j.contains("p")) c.p = double_from_json(j["p"]);
    if (j.contains("q")) c.q = double_from_json(j["q"]);
    if (j.contains("k1") || j.contains("k2") || j.contains("k3")) {
        MultiplicityParams k;
        k.k1 = j.value("k1", 0.0);
        k.k2 = j.value("k2", 0.0);
        k.k3 = j.value("k3", 1.0);
        c.k = k;
    }
    if (j.contains("dt")) c.dt = j["dt"].get<double>();
    if (j.contains("t_grid")) c.t_grid = j["t_grid"].get<std::vector<double>>();
    if (j.contains("y_grid")) c.y_grid = j["y_grid"].get<std::vector<double>>();
    if (j.contains("n_paths")) c.n_paths = j["n_paths"].get<std::size_t>();
    if (j.contains("n_draws")) c.n_draws = j["n_draws"].get<std::size_t>();
    if (j.contains("n_points")) c.n_points = j["n_points"].get<int>();
    if (j.contains("ode_h")) c.ode_h = j["ode_h"].get<double>();
    if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n_threads")) c.n_threads = j["n_threads"].get<int>();
    if (j.contains("deterministic_tol")) c.deterministic_tol = j["deterministic_tol"].get<double>();
    if (j.contains("z_max")) c.z_max = j["z_max"].get<double>();
    if (j.contains("moment_abs_floor")) c.moment_abs_floor = j["moment_abs_floor"].get<double>();
    if (j.contains("compare_printed")) c.compare_printed = j["compare_printed"].get<bool>();
    return c;
}

namespace {

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["kind"] = c.kind;
    j["n_particles"] = c.n_particles;
    j["kappa"] = double_to_json(c.kappa);
    j["p"] = double_to_json(c.p);
    j["q"] = double_to_json(c.q);
    if (c.k) {
        j["k1"] = c.k->k1;
        j["k2"] = c.k->k2;
        j["k3"] = c.k->k3;
    }
    j["dt"] = c.dt;
    j["t_grid"] = c.t_grid;
    j["y_grid"] = c.y_grid;
    j["n_paths"] = c.n_paths;
    j["n_draws"] = c.n_draws;
    j["n_points"] = c.n_points;
    j["ode_h"] = c.ode_h;
    j["t_max"] = c.t_max;
    j["seed"] = c.seed;
    j["n_threads"] = c.n_threads;
    j["deterministic_tol"] = c.deterministic_tol;
    j["z_max"] = c.z_max;
    j["moment_abs_floor"] = c.moment_abs_floor;
    j["compare_printed"] = c.compare_printed;
    return j;
}

// ---- per-kind runners -------------------------------------------------

void run_zeros(const ExperimentConfig& c, VerificationReport& rep) {
    const auto params = effective_params(c);
    const auto [alpha, beta] = alpha_beta(params);
    const auto z = jacobi_zeros(c.n_particles, alpha, beta);
    const auto res = stieltjes_residual(z, alpha, beta);
    for (int i = 0; i < c.n_particles; ++i) {
        rep.rows.push_back(make_row("z_" + std::to_string(i + 1), 0.0, z[i], 0.0, z[i],
                                    0.0, c.z_max, true));
        rep.rows.push_back(make_row("residual_" + std::to_string(i + 1), 0.0, res[i], 0.0,
                                    0.0, c.deterministic_tol, c.z_max));
    }
}

void run_coeffs(const ExperimentConfig& c, VerificationReport& rep) {
    const auto params = effective_params(c);
    for (int n = 1; n <= c.n_particles; ++n) {
        const auto canon = mart_coeffs(c.n_particles, n, params.p, params.q);
        const auto printed =
            c.compare_printed ? mart_coeffs_printed(c.n_particles, n, params.p, params.q) : canon;
        for (int l = 0; l <= n; ++l) {
            rep.rows.push_back(make_row(
                "c_" + std::to_string(n) + "_" + std::to_string(l), 0.0, canon[l], 0.0,
                printed[l], 0.0, c.z_max, true));
        }
        if (c.compare_printed && params.p == params.q) {
            for (int l = 1; 2 * l <= n; ++l) {
                rep.rows.push_back(make_row(
                    "closed_printed_c_" + std::to_string(n) + "_" + std::to_string(2 * l), 0.0,
                    canon[2 * l], 0.0,
                    closed_form_even_coeff_printed(c.n_particles, n, l, params.p, params.q), 0.0,
                    c.z_max, true));
            }
        }
    }
}

struct McMoments {
    // [t][n] mean and stderr of e_n, plus charpoly means per (t, y)
    std::vector<std::vector<double>> e_mean, e_se;
    std::vector<std::vector<double>> cp_mean, cp_se;
};

McMoments mc_moments(const PathEnsemble& ens, std::span<const double> y_grid) {
    const int np = ens.n_particles;
    const std::size_t nt = ens.grid.size();
    McMoments m;
    m.e_mean.assign(nt, std::vector<double>(np + 1, 0.0));
    m.e_se = m.e_mean;
    m.cp_mean.assign(nt, std::vector<double>(y_grid.size(), 0.0));
    m.cp_se = m.cp_mean;
    std::vector<std::vector<double>> e_m2(nt, std::vector<double>(np + 1, 0.0));
    std::vector<std::vector<double>> cp_m2(nt, std::vector<double>(y_grid.size(), 0.0));
    for (std::size_t path = 0; path < ens.n_paths; ++path) {
        for (std::size_t k = 0; k < nt; ++k) {
            const auto e = esym_all(ens.state(path, k));
            for (int n = 0; n <= np; ++n) {
                const double d = e[n] - m.e_mean[k][n];
                m.e_mean[k][n] += d / (path + 1.0);
                e_m2[k][n] += d * (e[n] - m.e_mean[k][n]);
            }
            for (std::size_t yi = 0; yi < y_grid.size(); ++yi) {
                const double v = charpoly_from_esym(e, y_grid[yi]);
                const double d = v - m.cp_mean[k][yi];
                m.cp_mean[k][yi] += d / (path + 1.0);
                cp_m2[k][yi] += d * (v - m.cp_mean[k][yi]);
            }
        }
    }
    const double denom = ens.n_paths > 1 ? (ens.n_paths - 1.0) * ens.n_paths : 1.0;
    for (std::size_t k = 0; k < nt; ++k) {
        for (int n = 0; n <= np; ++n) m.e_se[k][n] = std::sqrt(e_m2[k][n] / denom);
        for (std::size_t yi = 0; yi < y_grid.size(); ++yi)
            m.cp_se[k][yi] = std::sqrt(cp_m2[k][yi] / denom);
    }
    return m;
}

void run_martingale(const ExperimentConfig& c, VerificationReport& rep, bool charpoly_only) {
    const auto params = effective_params(c);
    const auto [alpha, beta] = alpha_beta(params);
    const auto z = jacobi_zeros(c.n_particles, alpha, beta);
    const auto ez = esym_all(z);
    const double dt = c.dt > 0.0 ? c.dt : default_dt(params.p, params.q);
    const auto ens = simulate(params, z, c.t_grid, dt, c.n_paths, c.seed, true, c.n_threads);
    const auto mom = mc_moments(ens, c.y_grid);
    const auto poly = monic_jacobi(c.n_particles, alpha, beta);
    for (std::size_t k = 0; k < ens.grid.size(); ++k) {
        if (!charpoly_only) {
            for (int n = 1; n <= c.n_particles; ++n)
                rep.rows.push_back(make_row("e_" + std::to_string(n), ens.grid[k],
                                            mom.e_mean[k][n], mom.e_se[k][n], ez[n],
                                            c.moment_abs_floor, c.z_max));
        }
        for (std::size_t yi = 0; yi < c.y_grid.size(); ++yi)
            rep.rows.push_back(make_row("charpoly(y=" + fmt_double(c.y_grid[yi]) + ")",
                                        ens.grid[k], mom.cp_mean[k][yi], mom.cp_se[k][yi],
                                        poly.eval(c.y_grid[yi]), 0.0, c.z_max));
    }
}

// sorted interior point with all gaps above min_gap, keyed deterministically
std::vector<double> random_interior_point(int np, std::uint64_t seed, std::uint64_t index) {
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> x(np);
        for (int i = 0; i < np; ++i)
            x[i] = -0.95 + 1.9 * rng::uniform(seed, 7, index * 64 + attempt, i);
        std::sort(x.begin(), x.end());
        bool ok = true;
        for (int i = 1; i < np; ++i)
            if (x[i] - x[i - 1] < 1e-3) ok = false;
        if (ok) return x;
    }
    throw std::runtime_error("random_interior_point: rejection budget exhausted");
}

void run_eigen(const ExperimentConfig& c, VerificationReport& rep) {
    if (!c.k) throw std::invalid_argument("eigen check needs k1,k2,k3");
    const auto k = *c.k;
    const int np = c.n_particles;
    const auto params = convert_k_to_pq(k, np);
    const auto sys = make_martingale_system(np, params.p, params.q);
    for (int n = 1; n <= np; ++n) {
        const double lambda =
            -n * (1.0 + k.k1 + 2.0 * k.k2 + (2.0 * np - n - 1.0) * k.k3);
        std::vector<double> coeffs(n + 1, 0.0);
        for (int m = 0; m <= n; ++m) coeffs[m] = sys.coeff[n][m];
        double worst = 0.0;
        for (int pt = 0; pt < c.n_points; ++pt) {
            const auto x = random_interior_point(np, c.seed, static_cast<std::uint64_t>(pt));
            const double lhs = apply_generator(k, coeffs, x);
            const double rhs = lambda * q_n_eval(sys, n, x);
            const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            worst = std::max(worst, rel);
        }
        rep.rows.push_back(make_row("eigen_rel_residual_q" + std::to_string(n), 0.0, worst,
                                    0.0, 0.0, c.deterministic_tol, c.z_max));
    }
}

// regularized incomplete beta by continued fraction (Lentz)
double betacf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double cc = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        cc = 1.0 + aa / cc;
        if (std::abs(cc) < tiny) cc = tiny;
        d = 1.0 / d;
        h *= d * cc;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        cc = 1.0 + aa / cc;
        if (std::abs(cc) < tiny) cc = tiny;
        d = 1.0 / d;
        const double del = d * cc;
        h *= del;
        if (std::abs(del - 1.0) < 1e-14) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lb = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(lb);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log(1.0 - x) + a * std::log(x)) *
                     betacf(b, a, 1.0 - x) / b;
}

// KS statistic of the draws against the Jacobi-weight CDF on [-1,1]
double ks_statistic_jacobi(const EnsembleSample& sample, double alpha, double beta) {
    std::vector<double> xs(sample.draws.begin(), sample.draws.end());
    std::sort(xs.begin(), xs.end());
    const double s = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = 0.5 * (1.0 + xs[i]); // (1-x)^a (1+x)^b -> u^b (1-u)^a
        const double cdf = reg_inc_beta(beta + 1.0, alpha + 1.0, u);
        d = std::max(d, std::abs(cdf - (i + 1.0) / s));
        d = std::max(d, std::abs(cdf - i / s));
    }
    return d;
}

void run_stationary(const ExperimentConfig& c, VerificationReport& rep) {
    if (!c.k) throw std::invalid_argument("stationary check needs k1,k2,k3");
    const auto k = *c.k;
    const int np = c.n_particles;
    const auto params = convert_k_to_pq(k, np);
    const auto [alpha, beta] = alpha_beta(params);
    const auto predicted = esym_at_z(np, alpha, beta);
    const auto sample = mcmc_sample(k, np, c.n_draws, c.seed);
    for (int n = 1; n <= np; ++n) {
        const auto [est, se] = moment_estimate(
            sample, [n](std::span<const double> x) { return esym_all(x)[n]; });
        rep.rows.push_back(
            make_row("e_" + std::to_string(n), 0.0, est, se, predicted[n], 0.0, c.z_max));
    }
    for (double y : c.y_grid) {
        const auto [est, se] = moment_estimate(sample, [y](std::span<const double> x) {
            return charpoly_from_esym(esym_all(x), y);
        });
        rep.rows.push_back(make_row("charpoly(y=" + fmt_double(y) + ")", 0.0, est, se,
                                    expected_charpoly(np, alpha, beta, y), 0.0, c.z_max));
    }
    if (np == 1) {
        const double d = ks_statistic_jacobi(sample, alpha, beta);
        const double crit = 1.6276 / std::sqrt(static_cast<double>(sample.n_draws));
        rep.rows.push_back(make_row("ks_statistic", 0.0, d, 0.0, 0.0, crit, c.z_max));
    }
    // documented mismatch of the printed parity closed form at N=2, alpha=beta
    const double a2 = alpha;
    rep.rows.push_back(make_row("parity_printed_N2_e2", 0.0,
                                parity_printed(2, a2, 2), 0.0,
                                esym_at_z(2, a2, a2)[2], 0.0, c.z_max, true));
}

void run_ode(const ExperimentConfig& c, VerificationReport& rep) {
    Params params = effective_params(c);
    params.kappa = kInfiniteKappa;
    const auto [alpha, beta] = alpha_beta(params);
    const int np = c.n_particles;
    const auto z = jacobi_zeros(np, alpha, beta);

    // (a) the zero vector is a fixed point
    const auto traj_z = ode_integrate(params, z, c.t_max, c.ode_h);
    double sup = 0.0;
    for (const auto& x : traj_z.states)
        for (int i = 0; i < np; ++i) sup = std::max(sup, std::abs(x[i] - z[i]));
    rep.rows.push_back(make_row("fixed_point_sup_dev", 0.0, sup, 0.0, 0.0, 1e-8, c.z_max));

    // (b) e_n along the flow matches the transfer-matrix expectation
    std::vector<double> x0(np);
    for (int i = 0; i < np; ++i) x0[i] = -1.0 + 2.0 * (i + 1.0) / (np + 1.0);
    const auto sys = make_martingale_system(np, params.p, params.q);
    const auto traj = ode_integrate(params, x0, c.t_max, c.ode_h);
    double worst = 0.0;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        const auto e = esym_all(traj.states[s]);
        const auto expected = expected_esym_curve(sys, x0, traj.times[s]);
        for (int n = 1; n <= np; ++n)
            worst = std::max(worst, std::abs(e[n] - expected[n]));
    }
    rep.rows.push_back(make_row("moment_curve_max_dev", 0.0, worst, 0.0, 0.0, 1e-6, c.z_max));
}

} // namespace

VerificationReport run(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.config = config;
    if (config.kind == "zeros") run_zeros(config, rep);
    else if (config.kind == "coeffs") run_coeffs(config, rep);
    else if (config.kind == "martingale") run_martingale(config, rep, false);
    else if (config.kind == "charpoly") run_martingale(config, rep, true);
    else if (config.kind == "eigen") run_eigen(config, rep);
    else if (config.kind == "stationary") run_stationary(config, rep);
    else if (config.kind == "ode") run_ode(config, rep);
    else throw std::invalid_argument("run: unknown kind '" + config.kind + "'");

    rep.pass = true;
    for (const auto& row : rep.rows) {
        if (row.informational) continue;
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(row.zscore));
        if (std::abs(row.zscore) > config.z_max) rep.pass = false;
    }
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string config_to_json_text(const ExperimentConfig& config) {
    return config_to_json(config).dump(2);
}

std::string report_render_csv(const VerificationReport& report) {
    std::string out = "name,t,estimate,stderr,predicted,zscore\n";
    for (const auto& row : report.rows) {
        out += row.name + ',' + fmt_double(row.t) + ',' + fmt_double(row.estimate) + ',' +
               fmt_double(row.stderr_) + ',' + fmt_double(row.predicted) + ',' +
               fmt_double(row.zscore) + '\n';
    }
    return out;
}

std::string report_render_json(const VerificationReport& report) {
    json j;
    j["config"] = config_to_json(report.config);
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["name"] = row.name;
        r["t"] = row.t;
        r["estimate"] = double_to_json(row.estimate);
        r["stderr"] = double_to_json(row.stderr_);
        r["predicted"] = double_to_json(row.predicted);
        r["tolerance"] = row.tolerance;
        r["zscore"] = double_to_json(row.zscore);
        r["informational"] = row.informational;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    // wall_time_s is deliberately omitted: identical input must give
    // identical bytes
    j["summary"] = {{"max_abs_z", report.max_abs_z}, {"pass", report.pass}};
    return j.dump(2) + "\n";
}

} // namespace jlab
