#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "lipharm/constants.hpp"
#include "oracles.hpp"

using namespace lipharm;

TEST_SUITE("constants") {

TEST_CASE("ball volumes match the gamma-function closed form") {
    CHECK(ball_volume(0) == 1.0);
    CHECK(ball_volume(1) == 2.0);
    for (int n = 0; n <= 14; ++n) {
        CHECK(ball_volume(n) ==
              doctest::Approx(oracles::ball_volume_gamma(n)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(ball_volume(-1), std::invalid_argument);
}

TEST_CASE("schwarz constant: rational values and growth") {
    CHECK(schwarz_constant(3) == 1.5);
    CHECK(schwarz_constant(2) == doctest::Approx(4.0 / oracles::kPi).epsilon(1e-13));
    CHECK(schwarz_constant(4) ==
          doctest::Approx(16.0 / (3.0 * oracles::kPi)).epsilon(1e-13));
    for (int n = 2; n < 12; ++n) {
        CHECK(schwarz_constant(n + 1) > schwarz_constant(n));
    }
    CHECK_THROWS_AS(schwarz_constant(1), std::invalid_argument);
}

TEST_CASE("gamma_star solves its defining quadratic") {
    for (double k : {0.3, 0.5, 1.0, schwarz_constant(2), 1.5, 4.0, 50.0}) {
        double g = gamma_star(k);
        CHECK(g > 0.0);
        CHECK(g < 1.0);
        double residual = 2.0 * g * k / ((1.0 - g) * (1.0 - g)) - 0.5;
        CHECK(std::fabs(residual) <= 1e-12);
    }
    // larger k forces a smaller admissible gamma
    CHECK(gamma_star(2.0) < gamma_star(1.0));
    CHECK_THROWS_AS(gamma_star(0.0), std::invalid_argument);
}

TEST_CASE("poisson constant matches Gamma(n/2)/pi^(n/2)") {
    CHECK(poisson_constant(2) == doctest::Approx(1.0 / oracles::kPi).epsilon(1e-14));
    CHECK(poisson_constant(3) ==
          doctest::Approx(1.0 / (2.0 * oracles::kPi)).epsilon(1e-14));
    for (int n = 2; n <= 10; ++n) {
        double oracle = std::exp(std::lgamma(0.5 * n)) /
                        std::pow(oracles::kPi, 0.5 * n);
        CHECK(poisson_constant(n) == doctest::Approx(oracle).epsilon(1e-13));
    }
}

TEST_CASE("derive_constants composes the chain") {
    auto b = derive_constants(2, 0.5, 0.0, 1.0);
    CHECK(b.k_n == doctest::Approx(1.27324).epsilon(1e-5));
    CHECK(b.cone_cos == 1.0);
    CHECK(b.c1 == doctest::Approx(2.0 / b.gamma_star));
    CHECK(b.c1_paper == doctest::Approx(7.0 * b.k_n));
    CHECK(b.c2 == doctest::Approx(4.0 * b.k_n * b.c1 / 0.5));
    CHECK(b.c3 == doctest::Approx(3.0 + b.c2));
    CHECK(b.c3 == doctest::Approx(144.565).epsilon(1e-5));

    auto c = derive_constants(3, 0.25, 2.0, 0.5);
    CHECK(c.cone_cos == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(c.c2 ==
          doctest::Approx(4.0 * c.k_n * c.c1 / (0.75 * std::pow(c.cone_cos, 1.75))));
    CHECK(c.c3 == doctest::Approx((2.0 * 2.0 + 3.0) * 0.5 + c.c2));
}

TEST_CASE("constants are exactly linear in the vertical constant") {
    for (int dim : {2, 3, 5}) {
        auto one = derive_constants(dim, 0.4, 1.5, 1.0);
        auto two = derive_constants(dim, 0.4, 1.5, 2.0);
        CHECK(two.c1 == 2.0 * one.c1);
        CHECK(two.c1_paper == 2.0 * one.c1_paper);
        CHECK(two.c2 == 2.0 * one.c2);
        CHECK(two.c3 == 2.0 * one.c3);
    }
}

TEST_CASE("zero vertical constant gives the all-zero bundle") {
    auto b = derive_constants(3, 0.5, 0.0, 0.0);
    CHECK(b.c1 == 0.0);
    CHECK(b.c1_paper == 0.0);
    CHECK(b.c2 == 0.0);
    CHECK(b.c3 == 0.0);
    CHECK(b.k_n == 1.5);
}

TEST_CASE("the 7 K_N alternative sits below the chain's vertical factor") {
    for (int dim = 2; dim <= 8; ++dim) {
        auto b = derive_constants(dim, 0.5, 1.0, 1.0);
        CHECK(2.0 / b.gamma_star > 7.0 * b.k_n);
        CHECK(b.c1_paper < b.c1);
    }
}

TEST_CASE("input validation names the failing constraint") {
    CHECK_THROWS_AS(derive_constants(1, 0.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_constants(2, 0.5, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_constants(2, 0.5, 0.0, -0.1), std::invalid_argument);
    for (double bad_alpha : {0.0, 1.0, -0.5, 1.5}) {
        try {
            derive_constants(2, bad_alpha, 0.0, 1.0);
            FAIL("alpha validation did not trigger");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("(1 - alpha)") != std::string::npos);
        }
    }
}

} // TEST_SUITE
