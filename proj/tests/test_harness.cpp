#include "jacobilab/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

using namespace jlab;

TEST_CASE("config JSON round trip") {
    ExperimentConfig cfg;
    cfg.kind = "martingale";
    cfg.n_particles = 4;
    cfg.kappa = 1.5;
    cfg.p = 6.0;
    cfg.q = 7.5;
    cfg.t_grid = {0.1, 0.7};
    cfg.n_paths = 123;
    cfg.seed = 99;
    cfg.n_threads = 2;
    cfg.compare_printed = true;
    const auto text = config_to_json_text(cfg);
    const auto back = config_from_json_text(text);
    CHECK(back.kind == cfg.kind);
    CHECK(back.n_particles == cfg.n_particles);
    CHECK(back.kappa == cfg.kappa);
    CHECK(back.p == cfg.p);
    CHECK(back.q == cfg.q);
    CHECK(back.t_grid == cfg.t_grid);
    CHECK(back.n_paths == cfg.n_paths);
    CHECK(back.seed == cfg.seed);
    CHECK(back.n_threads == cfg.n_threads);
    CHECK(back.compare_printed == cfg.compare_printed);
    CHECK_FALSE(back.k.has_value());

    SUBCASE("infinite kappa survives the round trip") {
        cfg.kappa = kInfiniteKappa;
        const auto back2 = config_from_json_text(config_to_json_text(cfg));
        CHECK(back2.kappa == kInfiniteKappa);
    }
    SUBCASE("k override survives the round trip") {
        cfg.k = MultiplicityParams{1.0, 0.5, 2.0};
        const auto back2 = config_from_json_text(config_to_json_text(cfg));
        REQUIRE(back2.k.has_value());
        CHECK(back2.k->k1 == 1.0);
        CHECK(back2.k->k2 == 0.5);
        CHECK(back2.k->k3 == 2.0);
    }
}

TEST_CASE("make_row zscore semantics") {
    // statistical row: stderr dominates
    const auto r1 = make_row("x", 0.0, 1.1, 0.05, 1.0, 0.0, 3.0);
    CHECK(r1.zscore == doctest::Approx(2.0).epsilon(1e-14));
    // deterministic row: tolerance/z_max is the scale
    const auto r2 = make_row("x", 0.0, 1.0 + 5e-10, 0.0, 1.0, 1e-9, 3.0);
    CHECK(std::abs(r2.zscore) <= 3.0);
    const auto r3 = make_row("x", 0.0, 1.0 + 2e-9, 0.0, 1.0, 1e-9, 3.0);
    CHECK(std::abs(r3.zscore) > 3.0);
}

TEST_CASE("report CSV rendering") {
    VerificationReport rep;
    SUBCASE("empty report is header only") {
        CHECK(report_render_csv(rep) == "name,t,estimate,stderr,predicted,zscore\n");
    }
    SUBCASE("rows render in order") {
        rep.rows.push_back(make_row("a", 0.25, 1.0, 0.0, 1.0, 1e-9, 3.0));
        rep.rows.push_back(make_row("b", 0.5, 2.0, 0.1, 2.0, 0.0, 3.0));
        const auto csv = report_render_csv(rep);
        CHECK(csv.find("name,t,estimate,stderr,predicted,zscore\n") == 0);
        CHECK(csv.find("\na,") != std::string::npos);
        CHECK(csv.find("\nb,") != std::string::npos);
        CHECK(csv.find("\na,") < csv.find("\nb,"));
    }
}

TEST_CASE("run: unknown kind throws") {
    ExperimentConfig cfg;
    cfg.kind = "nonsense";
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("run zeros: N=2 Legendre case") {
    ExperimentConfig cfg;
    cfg.kind = "zeros";
    cfg.n_particles = 2;
    cfg.p = 2.0; // alpha = beta = 0
    cfg.q = 2.0;
    const auto rep = run(cfg);
    CHECK(rep.pass);
    double z0 = 0.0, z1 = 0.0;
    int residual_rows = 0;
    for (const auto& row : rep.rows) {
        if (row.name == "z_1") z0 = row.estimate;
        if (row.name == "z_2") z1 = row.estimate;
        if (row.name.rfind("residual_", 0) == 0) {
            ++residual_rows;
            CHECK_FALSE(row.informational);
            CHECK(std::abs(row.estimate) <= 1e-9);
        }
    }
    CHECK(residual_rows == 2);
    CHECK(z0 == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(z1 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    SUBCASE("rerun is byte identical") {
        const auto rep2 = run(cfg);
        CHECK(report_render_csv(rep) == report_render_csv(rep2));
        CHECK(report_render_json(rep) == report_render_json(rep2));
    }
}

TEST_CASE("run coeffs: discrepancy rows appear with compare_printed") {
    ExperimentConfig cfg;
    cfg.kind = "coeffs";
    cfg.n_particles = 3;
    cfg.p = 4.0;
    cfg.q = 6.0;
    cfg.compare_printed = true;
    const auto rep = run(cfg);
    CHECK(rep.pass); // discrepancy rows are informational
    bool saw_c11 = false;
    for (const auto& row : rep.rows) {
        if (row.name == "c_1_1") {
            saw_c11 = true;
            CHECK(row.informational);
            CHECK(row.estimate != 0.0); // canonical
            CHECK(row.predicted == doctest::Approx(-row.estimate).epsilon(1e-13)); // printed
        }
    }
    CHECK(saw_c11);
}

TEST_CASE("effective_params applies the k override") {
    ExperimentConfig cfg;
    cfg.n_particles = 3;
    cfg.k = MultiplicityParams{1.0, 1.0, 1.0};
    const auto params = effective_params(cfg);
    CHECK(params.kappa == doctest::Approx(1.0));
    CHECK(params.q == doctest::Approx(2.0 + 2.5)); // N-1 + (1+2k1+2k2)/(2k3)
    CHECK(params.p == doctest::Approx(2.0 + 1.5));
}
