#pragma once

#include <functional>

namespace gseelab {

// Adaptive interval-halving quadrature on a nested Gauss-Kronrod 7/15 rule.
// Serves as the independent numerical oracle for every integral bound checked
// by the test suites. Infinite endpoints are handled by the rational map
// x = t/(1-t^2), which is fine for the Gaussian-type integrands used here.

struct QuadratureOptions {
    double tol = 1e-11;
    int max_depth = 60;
    long max_evals = 20'000'000;
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

} // namespace gseelab
