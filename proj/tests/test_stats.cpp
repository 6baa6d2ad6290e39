#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gseelab/errors.hpp"
#include "gseelab/rng.hpp"
#include "gseelab/stats.hpp"

using namespace gseelab;

TEST_CASE("ks statistic on a perfect uniform grid is small") {
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i) samples.push_back((i + 0.5) / 1000.0);
    const double d = ks_statistic(samples, [](double x) { return x; });
    CHECK(d < 1e-3 + 1e-12);
}

TEST_CASE("ks critical value at one percent") {
    CHECK(ks_critical(0.01, 10000) == doctest::Approx(1.6276 / 100.0).epsilon(1e-3));
}

TEST_CASE("ks rejects an obviously wrong cdf") {
    Rng rng(5);
    std::vector<double> samples;
    for (int i = 0; i < 2000; ++i) samples.push_back(rng.uniform01() * 0.5);
    const double d = ks_statistic(samples, [](double x) { return x; });
    CHECK(d > ks_critical(0.01, 2000));
}

TEST_CASE("empirical bernstein radius shrinks at the variance rate") {
    const double r1 = eb_radius(1000, 0.01, 1.0, 0.05);
    const double r2 = eb_radius(4000, 0.01, 1.0, 0.05);
    CHECK(r2 < r1);
    // variance term dominates at these sizes: ratio close to 2
    CHECK(r1 / r2 > 1.6);
    CHECK_THROWS_AS(eb_radius(0, 0.1, 1.0, 0.05), InvalidParameters);
}

TEST_CASE("moment accumulator matches direct formulas") {
    MomentAccumulator acc;
    const std::vector<double> xs{0.1, -0.4, 0.25, 0.3, -0.05};
    for (double x : xs) acc.add(x);
    double mu = 0.0;
    for (double x : xs) mu += x;
    mu /= xs.size();
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        m2 += (x - mu) * (x - mu);
        m4 += std::pow(x - mu, 4);
    }
    m2 /= xs.size();
    m4 /= xs.size();
    CHECK(acc.mean() == doctest::Approx(mu).epsilon(1e-12));
    CHECK(acc.m2() == doctest::Approx(m2).epsilon(1e-12));
    CHECK(acc.m4() == doctest::Approx(m4).epsilon(1e-10));
}

TEST_CASE("line fit recovers slope and intercept") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(0.1 * i);
        y.push_back(2.5 * 0.1 * i - 0.7);
    }
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(f.intercept == doctest::Approx(-0.7).epsilon(1e-10));
    CHECK(f.sse < 1e-18);
}

TEST_CASE("fixed-slope fit is worse when the slope is wrong") {
    std::vector<double> x, y;
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        x.push_back(0.2 * i);
        y.push_back(1.0 * 0.2 * i + 0.01 * rng.uniform(-1.0, 1.0));
    }
    const LineFit free_fit = fit_line(x, y);
    const LineFit wrong = fit_fixed_slope(x, y, 2.0);
    CHECK(wrong.sse > free_fit.sse);
}

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a = Rng::stream(99, 0);
    Rng b = Rng::stream(99, 0);
    Rng c = Rng::stream(99, 1);
    bool same = true, differ = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        same = same && va == b.next_u64();
        differ = differ || va != c.next_u64();
    }
    CHECK(same);
    CHECK(differ);
}
