#pragma once

#include <vector>

#include "gseelab/oracle.hpp"
#include "gseelab/spectrum.hpp"

namespace gseelab {

// Quantum-assisted rejection sampling: propose x uniformly, accept through the
// simulated ancilla measurement, deliver samples from p * nu restricted to the
// proposal window.

struct Proposal {
    double a = 0.0;
    double b = 0.0; // uniform on [a,b]; caller asserts supp(p*nu) coverage
};

struct RejectionRun {
    std::vector<double> accepted;
    long trials = 0;
    double acceptance_rate = 0.0;
    bool cap_exhausted = false;
};

// The family must realize h with h(E-x)^2 = nu-shape, i.e. for samples from
// p * n_sigma pass nu_family_ideal(sigma) (a Gaussian of width sigma*sqrt(2))
// or a polynomial/trig core certified against that target.
ShiftFamily nu_family_ideal(double sigma);

// trial_cap <= 0 selects the default 50 * n_target * ceil(expected trials).
RejectionRun sample_conv(const SpectralMeasure& spec, double sigma,
                         const ShiftFamily& family, const Proposal& prop,
                         AcceptanceOracle& oracle, long n_target,
                         long trial_cap = 0);

// Expected trials per accepted sample, (b-a) * c^2 / (sigma sqrt(2pi) * mass),
// with mass the quadrature of p * n_sigma over the window.
double expected_trials_bound(double sigma, const Proposal& window,
                             const SpectralMeasure& spec, double c = 1.0);

// Quadrature CDF of p * n_sigma conditioned on the window (test oracle).
double conditioned_cdf(const SpectralMeasure& spec, double sigma,
                       const Proposal& window, double x);

std::string rejection_csv(const RejectionRun& run);

} // namespace gseelab
