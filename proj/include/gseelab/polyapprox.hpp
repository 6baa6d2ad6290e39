#pragma once

#include <string>

#include "gseelab/chebyshev.hpp"

namespace gseelab {

// Certified approximants for the two input models: bounded Chebyshev
// polynomials (block-encoding model) and nonnegative cosine series
// (evolution model). Every certified_error is measured by an explicit grid
// sweep; theoretical degree bounds are only checked as trends in tests.

struct ApproxOptions {
    int max_degree = 4000;     // configurable cap; DegreeCapExceeded beyond it
    long grid_points = 100000; // equispaced certification grid
    double bound_slack = 1e-9; // tolerance on the |P| <= 1 bound
};

struct QueryCost {
    long queries = 0;        // U/U^dagger or controlled-evolution queries per circuit
    int ancillas = 0;        // metadata only
    int degree = 0;          // polynomial degree (2N for a cosine series)
    double evolution_time = 0.0; // per-query t for the evolution model, else 0
};

struct BoundedPoly {
    ChebSeries series;            // domain [series.lo, series.hi]
    int degree = 0;
    double certified_error = 0.0; // grid sup |P - target|
    bool bound_ok = false;        // grid sup |P| <= 1 + slack

    double eval(double x) const;  // DomainViolation outside the domain
};

struct CosineSeries {
    double T = 0.0;                // period
    std::vector<double> coeffs;    // a_0 ... a_N, all > 0, sum <= 1
    int N = 0;
    double certified_error = 0.0;  // grid sup vs exp(-x^2/(2 sigma^2)) on [-pi,pi]
    double trunc_constant = 0.0;   // the back-solved C with T = max(2pi, C sigma sqrt(ln 1/eps))

    double eval(double x) const;   // sum_j a_j cos(2 pi j x / T)
};

// f_{a,b;eps1}: in [1-eps1, 1] on [-1,a], |f| <= 1 on [a,b], |f| <= eps1 on [b,1].
BoundedPoly threshold_poly(double a, double b, double eps1,
                           const ApproxOptions& opt = {});

// g_{sigma,xi;eps2}(x) ~ exp(-(x-xi)^2/(2 sigma^2)) on [-1,1], |P| <= 1.
BoundedPoly gaussian_poly(double sigma, double eps2, double xi,
                          const ApproxOptions& opt = {});

// Shift-free core P(y) ~ exp(-y^2/(2 sigma^2)) on [-pi,pi]; g_{sigma,xi} = P(x-xi).
BoundedPoly gaussian_core_poly(double sigma, double eps2,
                               const ApproxOptions& opt = {});

// Dirac-comb construction of G_sigma with explicit positive coefficients.
CosineSeries gaussian_cosine_series(double sigma, double eps2,
                                    long grid_points = 100000);

// Inverse error function (Newton-polished), used by the threshold surrogates.
double erfinv(double y);

QueryCost degree_for_depth(const BoundedPoly& p, int base_ancillas = 1);
QueryCost degree_for_depth(const CosineSeries& s);

std::string to_json(const BoundedPoly& p);
std::string to_json(const CosineSeries& s);
BoundedPoly poly_from_json(const std::string& text);
CosineSeries cosine_from_json(const std::string& text);

} // namespace gseelab
