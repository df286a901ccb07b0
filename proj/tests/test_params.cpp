#include "jacobilab/params.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace jlab;

TEST_CASE("k -> (kappa, p, q) conversion") {
    const Params p = convert_k_to_pq({1.0, 1.0, 1.0}, 3);
    CHECK(p.kappa == doctest::Approx(1.0));
    CHECK(p.q == doctest::Approx(4.5));
    CHECK(p.p == doctest::Approx(3.5));
}

TEST_CASE("k1 = 0 gives p = q") {
    const Params p = convert_k_to_pq({0.0, 0.7, 1.3}, 4);
    CHECK(p.p == doctest::Approx(p.q).epsilon(1e-15));
}

TEST_CASE("round trip k -> pq -> k is the identity") {
    for (double k1 : {0.0, 0.5, 1.0, 2.5})
        for (double k2 : {-0.25, 0.5, 1.0})
            for (double k3 : {0.5, 1.0, 2.0}) {
                const MultiplicityParams k{k1, k2, k3};
                const auto back = convert_pq_to_k(convert_k_to_pq(k, 3));
                CHECK(back.k1 == doctest::Approx(k1).epsilon(1e-14));
                CHECK(back.k2 == doctest::Approx(k2).epsilon(1e-14));
                CHECK(back.k3 == doctest::Approx(k3).epsilon(1e-14));
            }
}

TEST_CASE("convert rejects k3 <= 0") {
    CHECK_THROWS_AS(convert_k_to_pq({1.0, 1.0, 0.0}, 2), std::domain_error);
    CHECK_THROWS_AS(convert_k_to_pq({1.0, 1.0, -1.0}, 2), std::domain_error);
}

TEST_CASE("alpha_beta") {
    const auto [alpha, beta] = alpha_beta({3, 1.0, 3.5, 4.5});
    CHECK(alpha == doctest::Approx(1.5));
    CHECK(beta == doctest::Approx(0.5));

    // k-route matches the explicit alpha-beta formulas
    const MultiplicityParams k{1.0, 1.0, 1.0};
    const auto [a2, b2] = alpha_beta(convert_k_to_pq(k, 3));
    CHECK(a2 == doctest::Approx((1 + 2 * k.k1 + 2 * k.k2) / (2 * k.k3) - 1).epsilon(1e-14));
    CHECK(b2 == doctest::Approx((1 + 2 * k.k2) / (2 * k.k3) - 1).epsilon(1e-14));
}

TEST_CASE("p = q gives alpha = beta") {
    const auto [a, b] = alpha_beta({5, 2.0, 7.0, 7.0});
    CHECK(a == b);
}

TEST_CASE("regime flags") {
    SUBCASE("kappa=2, p=q=5, N=3") {
        const auto r = validate({3, 2.0, 5.0, 5.0});
        CHECK(r.valid);
        CHECK(r.zeros_start_ok);
        CHECK(r.nonattainment);
    }
    SUBCASE("kappa=inf uses 1/kappa = 0") {
        const auto r = validate({3, kInfiniteKappa, 2.5, 2.5});
        CHECK(r.valid);
        CHECK(r.zeros_start_ok);
        CHECK(r.nonattainment);
    }
    SUBCASE("kappa=1, p=2.5, q=5, N=3") {
        const auto r = validate({3, 1.0, 2.5, 5.0});
        CHECK_FALSE(r.valid); // needs p > 3
        CHECK(r.zeros_start_ok);
        CHECK_FALSE(r.nonattainment); // needs p >= 4
    }
}

TEST_CASE("nonattainment implies valid; zeros_start_ok iff alpha,beta > -1") {
    for (double kappa : {1.0, 2.0, 4.0, kInfiniteKappa})
        for (double p : {1.5, 2.5, 4.0, 6.0})
            for (double q : {1.5, 2.5, 4.0, 6.0}) {
                const Params params{3, kappa, p, q};
                const auto r = validate(params);
                if (r.nonattainment) CHECK(r.valid);
                const auto [a, b] = alpha_beta(params);
                CHECK(r.zeros_start_ok == (a > -1.0 && b > -1.0));
            }
}

TEST_CASE("rho components are non-increasing for k1,k3 >= 0") {
    const MultiplicityParams k{1.5, -0.25, 0.75};
    for (int i = 1; i < 6; ++i)
        CHECK(rho_component(k, 6, i) >= rho_component(k, 6, i + 1));
    CHECK(rho_component(k, 6, 2) ==
          doctest::Approx((k.k1 + 2 * k.k2 + 2 * k.k3 * 4) / 2));
}
