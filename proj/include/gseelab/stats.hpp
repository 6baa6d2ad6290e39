#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace gseelab {

// Two-sided Kolmogorov-Smirnov statistic of samples against a CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic critical value at significance alpha (e.g. 0.01 -> 1.628/sqrt(n)).
double ks_critical(double alpha, long n);

// Empirical-Bernstein deviation radius for the mean of n samples with
// empirical variance var_hat and range bound R, at confidence 1-delta.
double eb_radius(long n, double var_hat, double range, double delta);

// Running raw moments up to order 4; central moments derived on demand.
struct MomentAccumulator {
    long n = 0;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;

    void add(double x) {
        ++n;
        const double x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
    }
    double mean() const { return s1 / n; }
    double m2() const; // central second moment (biased sample variance)
    double m4() const; // central fourth moment
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0; // residual sum of squares
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Best intercept for a fixed slope; returns the fit with its residual.
LineFit fit_fixed_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double slope);

} // namespace gseelab
