#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gseelab/errors.hpp"
#include "gseelab/quadrature.hpp"
#include "gseelab/rejection.hpp"
#include "gseelab/stats.hpp"

using namespace gseelab;

namespace {

double window_moment(const SpectralMeasure& spec, double sigma, const Proposal& w,
                     int order) {
    auto dens = [&](double x) {
        double acc = 0.0;
        for (std::size_t j = 0; j < spec.energies.size(); ++j) {
            const double u = (x - spec.energies[j]) / sigma;
            acc += spec.weights[j] * std::exp(-0.5 * u * u);
        }
        return acc * std::pow(x, order);
    };
    return integrate(dens, w.a, w.b) / integrate([&](double x) {
               double acc = 0.0;
               for (std::size_t j = 0; j < spec.energies.size(); ++j) {
                   const double u = (x - spec.energies[j]) / sigma;
                   acc += spec.weights[j] * std::exp(-0.5 * u * u);
               }
               return acc;
           }, w.a, w.b);
}

} // namespace

TEST_CASE("single centered gaussian: sample mean near zero") {
    const auto spec = synth({0.0, 0.9}, {1.0, 0.0});
    const double sigma = 0.05;
    const Proposal prop{-0.3, 0.3};
    AcceptanceOracle oracle(BackendKind::IdealFunction, 1.0, 1, Rng::stream(21, 0));
    const auto run = sample_conv(spec, sigma, nu_family_ideal(sigma), prop, oracle, 4000);
    REQUIRE(!run.cap_exhausted);
    double mean = 0.0;
    for (double x : run.accepted) mean += x;
    mean /= run.accepted.size();
    CHECK(std::abs(mean) <= 3.0 * sigma / std::sqrt((double)run.accepted.size()));
}

TEST_CASE("two-level moments match quadrature within four standard errors") {
    const auto spec = synth({-0.5, 0.5}, {0.6, 0.4});
    const double sigma = 0.08;
    const Proposal prop{-0.8, -0.2};
    AcceptanceOracle oracle(BackendKind::IdealFunction, 1.0, 1, Rng::stream(22, 0));
    const auto run = sample_conv(spec, sigma, nu_family_ideal(sigma), prop, oracle, 20000);
    REQUIRE(!run.cap_exhausted);
    const double n = static_cast<double>(run.accepted.size());
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (double x : run.accepted) {
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    const double m1 = s1 / n, m2 = s2 / n, m4 = s4 / n;
    const double m1_ref = window_moment(spec, sigma, prop, 1);
    const double se1 = std::sqrt(std::max(0.0, m2 - m1 * m1) / n);
    CHECK(std::abs(m1 - m1_ref) <= 4.0 * se1);

    const double m2_ref = window_moment(spec, sigma, prop, 2);
    const double se2 = std::sqrt(std::max(0.0, m4 - m2 * m2) / n) + 1e-9;
    CHECK(std::abs(m2 - m2_ref) <= 4.0 * se2);
}

TEST_CASE("trials per accepted sample tracks the quadrature prediction") {
    const auto spec = synth({-0.5, 0.5}, {0.6, 0.4});
    const double sigma = 0.08;
    const Proposal prop{-0.8, -0.2};
    const double m2 = expected_trials_bound(sigma, prop, spec);
    AcceptanceOracle oracle(BackendKind::IdealFunction, 1.0, 1, Rng::stream(23, 0));
    const auto run = sample_conv(spec, sigma, nu_family_ideal(sigma), prop, oracle, 10000);
    REQUIRE(!run.cap_exhausted);
    const double observed = static_cast<double>(run.trials) / run.accepted.size();
    CHECK(observed > 0.8 * m2);
    CHECK(observed < 1.2 * m2);
}

TEST_CASE("fully-contained gaussian gives the unit-mass closed form") {
    const auto spec = synth({0.0, 0.9}, {1.0, 0.0});
    const double sigma = 0.03;
    const Proposal prop{-0.5, 0.5};
    const double m2 = expected_trials_bound(sigma, prop, spec);
    const double closed = (prop.b - prop.a) / (sigma * std::sqrt(2.0 * M_PI));
    CHECK(m2 == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("starved window exhausts the trial cap") {
    const auto spec = synth({-0.9, 0.9}, {0.5, 0.5});
    const double sigma = 0.01;
    const Proposal prop{0.3, 0.4}; // ~ 30 sigma away from both levels
    AcceptanceOracle oracle(BackendKind::IdealFunction, 1.0, 1, Rng::stream(24, 0));
    const auto run =
        sample_conv(spec, sigma, nu_family_ideal(sigma), prop, oracle, 100, 5000);
    CHECK(run.cap_exhausted);
    CHECK(run.trials == 5000);
}

TEST_CASE("ks statistic against the conditioned cdf") {
    const auto spec = synth({-0.5, -0.1, 0.3, 0.6}, {0.4, 0.3, 0.2, 0.1});
    const double sigma = 0.06;
    const Proposal prop{-0.75, 0.85};
    AcceptanceOracle oracle(BackendKind::IdealFunction, 1.0, 1, Rng::stream(25, 0));
    const auto run = sample_conv(spec, sigma, nu_family_ideal(sigma), prop, oracle, 10000);
    REQUIRE(!run.cap_exhausted);
    const double d = ks_statistic(run.accepted, [&](double x) {
        return conditioned_cdf(spec, sigma, prop, x);
    });
    CHECK(d < ks_critical(0.01, (long)run.accepted.size()));
}

TEST_CASE("csv export shape") {
    RejectionRun run;
    run.accepted = {0.25, -0.5};
    run.trials = 7;
    const std::string csv = rejection_csv(run);
    CHECK(csv.rfind("index,value\n", 0) == 0);
    CHECK(csv.find("0,0.25") != std::string::npos);
    CHECK(csv.find("1,-0.5") != std::string::npos);
}
