#pragma once

#include <optional>
#include <string>

#include "gseelab/gsee.hpp"
#include "gseelab/oracle.hpp"
#include "gseelab/spectrum.hpp"

namespace gseelab {

// Two-stage certification: a tail-mass test on [E_hat + L/2, E_hat + 2L]
// followed by a conditioned-variance test on [E_hat - L, E_hat + L]. Accepts
// only when the refined estimate is trustworthy; needs no gap knowledge.

struct CertParams {
    double eps = 0.0;
    double eta = 0.0;
    double sigma = 0.0;
    double E_hat = 0.0; // promised |E_hat - E0| <= sigma
    double delta = 0.0;
    // derived
    double tau_target = 0.0; // eps^2 eta / 160
    double L = 0.0;          // sigma sqrt(8 ln 1/tau)
    double c = 4.0;          // window-size constant
    double c_prime = 1.0 / 160.0;
    // engineering knobs
    long max_trials = 4'000'000'000L; // per stage; TrialCapExhausted beyond
};

CertParams make_cert_params(double eps, double eta, double sigma, double E_hat,
                            double delta);

enum class CertDecision { Accept, Reject };

struct CertVerdict {
    CertDecision decision = CertDecision::Reject;
    double refined_estimate = 0.0;     // conditioned mean M (meaningful on Accept)
    double tail_mass = 0.0;            // stage-1 estimate of the window integral
    double conditioned_mean = 0.0;
    double conditioned_variance = 0.0; // S
    long samples_used = 0;             // accepted stage-2 samples
    long trials = 0;                   // Bernoulli trials, both stages
    std::string reason;
    CostReport cost;
};

// The backend supplies the Gaussian acceptance family (h^2 = n_sigma shape).
// spec_aware_E0, when set, turns on the promise check (test mode only).
CertVerdict gsee_cert(const CertParams& params, const SpectralMeasure& spec,
                      EstimatorBackend& backend, AcceptanceOracle& oracle,
                      std::optional<double> spec_aware_E0 = std::nullopt);

// Lower bound sigma^2 + eta c^2 eps^2 on the variance of a Gaussian mixture
// whose mean sits c*eps away from the lowest component.
double mixture_variance_bound(const std::vector<double>& weights,
                              const std::vector<double>& means, double sigma,
                              double eps, double c);

struct WindowMoments {
    double window_mass = 0.0;   // integral of p * n_sigma over [E_hat-L, E_hat+L]
    double mean = 0.0;          // conditioned mean
    double second_moment = 0.0; // conditioned raw second moment
    double variance = 0.0;
    double mass_G = 0.0;        // discrete weight with |E_i - E_hat| <= L/2
    double gap_bound = 0.0;     // 4 c' eps^2 eta^2 when (eps, eta) given
};

WindowMoments peaked_window_moments(const SpectralMeasure& spec, double sigma,
                                    double E_hat, double L, double eps = 0.0,
                                    double eta = 0.0);

} // namespace gseelab
