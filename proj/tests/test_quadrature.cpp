#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gseelab/quadrature.hpp"

using namespace gseelab;

TEST_CASE("polynomial moment") {
    CHECK(integrate([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gaussian over the whole line") {
    const double sigma = 0.3;
    const double v = integrate(
        [sigma](double x) { return std::exp(-x * x / (sigma * sigma)); },
        -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity());
    CHECK(std::abs(v - sigma * std::sqrt(M_PI)) < 1e-10);
}

TEST_CASE("first moment of a truncated gaussian matches the closed form") {
    for (const auto [sigma, s, w] : {std::tuple{0.2, 0.05, 0.3},
                                     std::tuple{0.1, -0.04, 0.25},
                                     std::tuple{0.5, 0.2, 0.9}}) {
        const double v = integrate(
            [sg = sigma](double x) { return x * std::exp(-x * x / (sg * sg)); },
            s - w, s + w);
        const double closed = sigma * sigma / 2.0 *
                              (std::exp(-(w - s) * (w - s) / (sigma * sigma)) -
                               std::exp(-(w + s) * (w + s) / (sigma * sigma)));
        CHECK(std::abs(v - closed) < 1e-10);
    }
}

TEST_CASE("oscillatory integrand still converges") {
    const double v = integrate([](double x) { return std::sin(40.0 * x); }, 0.0, M_PI);
    const double closed = (1.0 - std::cos(40.0 * M_PI)) / 40.0;
    CHECK(std::abs(v - closed) < 1e-9);
}

TEST_CASE("half-line gaussian tail") {
    const double v = integrate([](double x) { return std::exp(-0.5 * x * x); }, 2.0,
                               std::numeric_limits<double>::infinity());
    const double closed = std::sqrt(2.0 * M_PI) * 0.5 * std::erfc(2.0 / std::sqrt(2.0));
    CHECK(std::abs(v - closed) < 1e-10);
}
