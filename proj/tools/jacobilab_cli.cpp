// Command-line front end: zeros / coeffs / simulate / verify / sample-ensemble.
// Exit codes: 0 pass, 1 verification failure, 2 usage or config error,
// 3 numeric breakdown.

#include "jacobilab/dynamics.hpp"
#include "jacobilab/ensemble.hpp"
#include "jacobilab/harness.hpp"
#include "jacobilab/jacobi1d.hpp"
#include "jacobilab/martingale.hpp"
#include "jacobilab/sympoly.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& out_dir, const std::string& filename, const std::string& bytes) {
    if (out_dir.empty()) {
        std::cout << bytes;
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / filename, std::ios::binary);
    f << bytes;
}

std::string zeros_csv(int degree, double alpha, double beta) {
    const auto z = jlab::jacobi_zeros(degree, alpha, beta);
    const auto res = jlab::stieltjes_residual(z, alpha, beta);
    std::string out = "index,z,residual\n";
    for (int i = 0; i < degree; ++i)
        out += std::to_string(i + 1) + ',' + fmt(z[i]) + ',' + fmt(res[i]) + '\n';
    return out;
}

std::string coeffs_csv(int np, double p, double q, bool compare_printed) {
    std::string out = "n,l,c_canonical,c_printed,abs_diff\n";
    for (int n = 1; n <= np; ++n) {
        const auto canon = jlab::mart_coeffs(np, n, p, q);
        const auto printed = compare_printed ? jlab::mart_coeffs_printed(np, n, p, q) : canon;
        for (int l = 0; l <= n; ++l)
            out += std::to_string(n) + ',' + std::to_string(l) + ',' + fmt(canon[l]) + ',' +
                   fmt(printed[l]) + ',' + fmt(std::abs(canon[l] - printed[l])) + '\n';
    }
    return out;
}

std::string trajectory_csv(const jlab::PathEnsemble& ens) {
    std::string out = "path,t";
    for (int i = 1; i <= ens.n_particles; ++i) out += ",x_" + std::to_string(i);
    out += '\n';
    for (std::size_t path = 0; path < ens.n_paths; ++path) {
        for (std::size_t k = 0; k < ens.grid.size(); ++k) {
            out += std::to_string(path) + ',' + fmt(ens.grid[k]);
            for (double v : ens.state(path, k)) out += ',' + fmt(v);
            out += '\n';
        }
    }
    return out;
}

std::string moment_csv(const jlab::PathEnsemble& ens) {
    std::string out = "t,n,estimate,stderr\n";
    const std::size_t m = ens.n_paths;
    for (std::size_t k = 0; k < ens.grid.size(); ++k) {
        for (int n = 1; n <= ens.n_particles; ++n) {
            double mean = 0.0, m2 = 0.0;
            for (std::size_t path = 0; path < m; ++path) {
                const double v = jlab::esym_all(ens.state(path, k))[n];
                const double d = v - mean;
                mean += d / (path + 1.0);
                m2 += d * (v - mean);
            }
            const double se = m > 1 ? std::sqrt(m2 / ((m - 1.0) * m)) : 0.0;
            out += fmt(ens.grid[k]) + ',' + std::to_string(n) + ',' + fmt(mean) + ',' +
                   fmt(se) + '\n';
        }
    }
    return out;
}

std::string sample_csv(const jlab::EnsembleSample& sample) {
    std::string out = "draw";
    for (int i = 1; i <= sample.n_particles; ++i) out += ",x_" + std::to_string(i);
    out += '\n';
    for (std::size_t s = 0; s < sample.n_draws; ++s) {
        out += std::to_string(s);
        for (double v : sample.draw(s)) out += ',' + fmt(v);
        out += '\n';
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-Jacobi diffusion laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format = "csv";
    app.add_option("--config", config_path, "JSON config file")->configurable(false);
    app.add_option("--out", out_dir, "output directory (default: stdout)");
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    jlab::ExperimentConfig cfg;
    double alpha = 0.0, beta = 0.0;
    int degree = 2;
    double k1 = 0.0, k2 = 0.0, k3 = 1.0;
    bool have_k = false;

    auto add_common = [&](CLI::App* sub) {
        sub->fallthrough(); // allow --config/--out/--format after the subcommand
        sub->add_option("--n-particles,-N", cfg.n_particles);
        sub->add_option("--kappa", cfg.kappa);
        sub->add_option("--p", cfg.p);
        sub->add_option("--q", cfg.q);
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--threads", cfg.n_threads);
        sub->add_option("--dt", cfg.dt);
        sub->add_option("--t", cfg.t_grid, "time grid");
        sub->add_option("--y", cfg.y_grid, "charpoly evaluation points");
        sub->add_option("--paths,-M", cfg.n_paths);
        sub->add_option("--draws,-S", cfg.n_draws);
        sub->add_option("--points", cfg.n_points);
        sub->add_option("--ode-h", cfg.ode_h, "RK4 step");
        sub->add_option("--t-max", cfg.t_max);
        auto* o1 = sub->add_option("--k1", k1);
        auto* o2 = sub->add_option("--k2", k2);
        auto* o3 = sub->add_option("--k3", k3);
        sub->callback([&, o1, o2, o3] {
            if (o1->count() || o2->count() || o3->count()) have_k = true;
        });
    };

    auto* sc_zeros = app.add_subcommand("zeros", "Jacobi polynomial zeros and residuals");
    sc_zeros->fallthrough();
    sc_zeros->add_option("--degree", degree)->required();
    sc_zeros->add_option("--alpha", alpha)->required();
    sc_zeros->add_option("--beta", beta)->required();

    auto* sc_coeffs = app.add_subcommand("coeffs", "martingale coefficient table");
    add_common(sc_coeffs);
    sc_coeffs->add_flag("--compare-printed", cfg.compare_printed);

    auto* sc_sim = app.add_subcommand("simulate", "Euler-Maruyama path ensemble");
    add_common(sc_sim);
    bool unnormalized = false;
    std::vector<double> start;
    sc_sim->add_flag("--unnormalized", unnormalized, "simulate the original SDE");
    sc_sim->add_option("--start", start, "start point (default: Jacobi zeros)");

    auto* sc_verify = app.add_subcommand("verify", "run a verification report");
    std::string verify_kind;
    sc_verify->add_option("kind", verify_kind, "martingale|charpoly|eigen|stationary|ode")
        ->required();
    add_common(sc_verify);
    sc_verify->add_flag("--compare-printed", cfg.compare_printed);

    auto* sc_sample = app.add_subcommand("sample-ensemble", "MCMC stationary sample");
    add_common(sc_sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot open config: " << config_path << "\n";
                return 2;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            auto file_cfg = jlab::config_from_json_text(ss.str());
            // CLI flags override the file: re-parse on top of the file values
            if (file_cfg.k) { k1 = file_cfg.k->k1; k2 = file_cfg.k->k2; k3 = file_cfg.k->k3; have_k = true; }
            const bool printed = cfg.compare_printed || file_cfg.compare_printed;
            file_cfg.compare_printed = printed;
            std::swap(cfg, file_cfg);
            app.clear();
            app.parse(argc, argv);
            cfg.compare_printed = cfg.compare_printed || printed;
        }
        if (have_k) cfg.k = jlab::MultiplicityParams{k1, k2, k3};

        if (*sc_zeros) {
            emit(out_dir, "zeros.csv", zeros_csv(degree, alpha, beta));
            return 0;
        }
        if (*sc_coeffs) {
            const auto params = jlab::effective_params(cfg);
            emit(out_dir, "coeffs.csv",
                 coeffs_csv(cfg.n_particles, params.p, params.q, cfg.compare_printed));
            return 0;
        }
        if (*sc_sim) {
            const auto params = jlab::effective_params(cfg);
            const auto [a, b] = jlab::alpha_beta(params);
            std::vector<double> x0 = start.empty()
                                         ? jlab::jacobi_zeros(cfg.n_particles, a, b)
                                         : start;
            const double dt = cfg.dt > 0.0 ? cfg.dt : std::min(1e-3, 0.1 / (params.p + params.q));
            const auto ens = jlab::simulate(params, x0, cfg.t_grid, dt, cfg.n_paths, cfg.seed,
                                            !unnormalized, cfg.n_threads);
            emit(out_dir, "trajectories.csv", trajectory_csv(ens));
            emit(out_dir, "moments.csv", moment_csv(ens));
            return 0;
        }
        if (*sc_sample) {
            if (!cfg.k) {
                std::cerr << "sample-ensemble needs --k1/--k2/--k3\n";
                return 2;
            }
            const auto sample = jlab::mcmc_sample(*cfg.k, cfg.n_particles, cfg.n_draws, cfg.seed);
            emit(out_dir, "sample.csv", sample_csv(sample));
            const auto params = jlab::convert_k_to_pq(*cfg.k, cfg.n_particles);
            const auto [a, b] = jlab::alpha_beta(params);
            const auto predicted = jlab::esym_at_z(cfg.n_particles, a, b);
            nlohmann::json summary = nlohmann::json::array();
            for (int n = 1; n <= cfg.n_particles; ++n) {
                const auto [est, se] = jlab::moment_estimate(
                    sample, [n](std::span<const double> x) { return jlab::esym_all(x)[n]; });
                summary.push_back({{"observable", "e_" + std::to_string(n)},
                                   {"estimate", est},
                                   {"stderr", se},
                                   {"predicted", predicted[n]},
                                   {"zscore", se > 0 ? (est - predicted[n]) / se : 0.0}});
            }
            emit(out_dir, "summary.json", summary.dump(2) + "\n");
            return 0;
        }
        if (*sc_verify) {
            cfg.kind = verify_kind;
            const auto report = jlab::run(cfg);
            const std::string bytes = format == "json" ? jlab::report_render_json(report)
                                                       : jlab::report_render_csv(report);
            emit(out_dir, "report." + format, bytes);
            if (!out_dir.empty())
                std::cout << (report.pass ? "PASS" : "FAIL") << " max|z|=" << report.max_abs_z
                          << "\n";
            return report.pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
