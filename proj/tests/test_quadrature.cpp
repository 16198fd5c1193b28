#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polynorm/quadrature.hpp"

using namespace polynorm;

TEST_CASE("smooth integrands hit the requested tolerance") {
    CHECK(integrate([](double t) { return std::sin(t); }, 0.0, pi) ==
          Catch::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double t) { return std::exp(t); }, 0.0, 1.0) ==
          Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(integrate([](double t) { return 1.0 / (1.0 + t * t); }, -4.0, 4.0) ==
          Catch::Approx(2.0 * std::atan(4.0)).epsilon(1e-12));
}

TEST_CASE("endpoint log singularities are integrable") {
    // int_0^1 log t dt = -1
    CHECK(integrate([](double t) { return std::log(t); }, 0.0, 1.0) ==
          Catch::Approx(-1.0).epsilon(1e-9));
    // int_0^pi log(2 cos(t/2)) dt = 0, singular at t = pi
    CHECK(std::abs(integrate([](double t) { return std::log(2.0 * std::cos(0.5 * t)); }, 0.0,
                             pi)) < 1e-8);
}

TEST_CASE("orientation and degenerate intervals") {
    CHECK(integrate([](double t) { return t; }, 1.0, 0.0) == Catch::Approx(-0.5));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("non-finite integrand raises evaluation_error") {
    CHECK_THROWS_AS(integrate([](double t) { return std::log(t - 0.5); }, 0.0, 1.0),
                    evaluation_error);
}

TEST_CASE("piecewise integration splits at breakpoints") {
    const double v = integrate_pieces([](double t) { return std::abs(t); },
                                      {{-1.0, 0.0}, {0.0, 1.0}});
    CHECK(v == Catch::Approx(1.0).epsilon(1e-12));
}
