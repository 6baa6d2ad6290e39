#include "gseelab/certify.hpp"

#include <cmath>

#include "gseelab/errors.hpp"
#include "gseelab/quadrature.hpp"
#include "gseelab/stats.hpp"

namespace gseelab {
namespace {

// Per-checkpoint share of a stage's confidence budget; sums to the budget.
double checkpoint_delta(double stage_delta, int k) {
    return stage_delta / static_cast<double>((k + 1) * (k + 2));
}

double mixture_density(const SpectralMeasure& spec, double sigma, double x) {
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    double acc = 0.0;
    for (std::size_t j = 0; j < spec.energies.size(); ++j) {
        const double u = (x - spec.energies[j]) / sigma;
        acc += spec.weights[j] * std::exp(-0.5 * u * u);
    }
    return norm * acc;
}

} // namespace

CertParams make_cert_params(double eps, double eta, double sigma, double E_hat,
                            double delta) {
    if (!(eps > 0.0 && eps < 1.0) || !(eta > 0.0 && eta <= 1.0) ||
        !(sigma > 0.0) || !(delta > 0.0 && delta < 1.0))
        throw InvalidParameters("make_cert_params: parameters out of range");
    CertParams p;
    p.eps = eps;
    p.eta = eta;
    p.sigma = sigma;
    p.E_hat = E_hat;
    p.delta = delta;
    p.tau_target = eps * eps * eta / 160.0;
    p.L = sigma * std::sqrt(8.0 * std::log(1.0 / p.tau_target));
    return p;
}

CertVerdict gsee_cert(const CertParams& p, const SpectralMeasure& spec,
                      EstimatorBackend& backend, AcceptanceOracle& oracle,
                      std::optional<double> spec_aware_E0) {
    if (spec_aware_E0 && std::abs(p.E_hat - *spec_aware_E0) > p.sigma + 1e-12)
        throw PromiseViolationDetected("|E_hat - E0| > sigma");

    CertVerdict v;
    const double c = backend.c2();
    const double c2 = c * c;
    // The sampled law must be p * n_sigma, so the oracle function squares to
    // the sigma-Gaussian: a width sigma*sqrt(2) core.
    const double fam_eps = std::max(1e-9, std::min(1e-3, p.tau_target / 10.0));
    const ShiftFamily fam = backend.gaussian(p.sigma * std::sqrt(2.0), fam_eps);

    // ---- Stage 1: tail mass on [E_hat + L/2, E_hat + 2L] ----
    {
        const double wlo = p.E_hat + 0.5 * p.L;
        const double whi = p.E_hat + 2.0 * p.L;
        const double width = whi - wlo;
        WindowLaw law(spec, fam, c, wlo, whi);
        // integral-to-Bernoulli conversion: E[accept] = sigma sqrt(2pi) I/(width c^2)
        const double to_p = p.sigma * std::sqrt(2.0 * M_PI) / (width * c2);
        const double a_p = p.tau_target * to_p; // additive target on the mean
        const double r_p = 2.0 * a_p;           // reject threshold eps^2 eta/80
        long n = 0, K = 0;
        long next = 4096;
        int k = 0;
        bool reject = false;
        bool decided = false;
        while (!decided) {
            while (n < next) {
                const double x = oracle.rng().uniform(wlo, whi);
                ++n;
                if (oracle.sample_with_prob(law.q(x), law.cost())) ++K;
            }
            const double ph = static_cast<double>(K) / n;
            const double rad =
                eb_radius(n, ph * (1.0 - ph), 1.0, checkpoint_delta(p.delta / 2.0, k));
            if (ph + rad <= r_p) {
                decided = true; // tail certified small
            } else if (ph - rad >= r_p) {
                decided = true;
                reject = true;
            } else if (rad <= a_p) {
                decided = true;
                reject = ph >= r_p;
            } else if (n >= p.max_trials) {
                throw TrialCapExhausted("certification stage 1 exceeded trial cap");
            }
            if (decided) v.tail_mass = ph / to_p;
            next *= 2;
            ++k;
        }
        v.trials += n;
        if (reject) {
            v.decision = CertDecision::Reject;
            v.reason = "tail mass at or above eps^2 eta/80";
            v.cost = oracle.run_report();
            return v;
        }
    }

    // ---- Stage 2: conditioned moments on [E_hat - L, E_hat + L] ----
    {
        const double wlo = p.E_hat - p.L;
        const double whi = p.E_hat + p.L;
        const double width = whi - wlo;
        WindowLaw law(spec, fam, c, wlo, whi);
        MomentAccumulator acc;
        long n = 0;
        long next = 8192;
        int k = 0;
        const double band = 2.0 * p.eps * p.eps * p.eta;
        const double sig2 = p.sigma * p.sigma;
        while (true) {
            while (n < next) {
                const double x = oracle.rng().uniform(wlo, whi);
                ++n;
                if (oracle.sample_with_prob(law.q(x), law.cost())) acc.add(x);
            }
            if (acc.n >= 64) {
                const double dk = checkpoint_delta(p.delta / 4.0, k);
                const double m2 = std::max(0.0, acc.m2());
                const double var_y = std::max(0.0, acc.m4() - m2 * m2);
                const double r_mean = eb_radius(acc.n, m2, width, dk);
                const double r_var = eb_radius(acc.n, var_y, width * width, dk) +
                                     r_mean * r_mean;
                const double s = m2;
                v.conditioned_mean = acc.mean();
                v.conditioned_variance = s;
                v.samples_used = acc.n;
                if (std::abs(s - sig2) - r_var > band) {
                    v.decision = CertDecision::Reject;
                    v.reason = "conditioned variance outside the accept band";
                    break;
                }
                if (r_var <= p.tau_target && r_mean <= p.tau_target) {
                    if (std::abs(s - sig2) <= band) {
                        v.decision = CertDecision::Accept;
                        v.refined_estimate = acc.mean();
                        v.reason = "variance within band at full precision";
                    } else {
                        v.decision = CertDecision::Reject;
                        v.reason = "conditioned variance outside the accept band";
                    }
                    break;
                }
            }
            if (n >= p.max_trials)
                throw TrialCapExhausted("certification stage 2 exceeded trial cap");
            next *= 2;
            ++k;
        }
        v.trials += n;
    }
    v.cost = oracle.run_report();
    return v;
}

double mixture_variance_bound(const std::vector<double>& weights,
                              const std::vector<double>& means, double sigma,
                              double eps, double c) {
    if (weights.size() != means.size() || weights.empty())
        throw InvalidParameters("mixture_variance_bound: size mismatch");
    if (!(sigma > 0.0) || !(eps > 0.0) || !(c > 0.0))
        throw InvalidParameters("mixture_variance_bound: bad scalars");
    double wsum = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw InvalidParameters("negative weight");
        wsum += weights[i];
        mean += weights[i] * means[i];
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw InvalidParameters("weights must sum to 1");
    if (std::abs(mean - means[0]) < c * eps - 1e-15)
        throw InvalidParameters("mean-shift precondition |E[X]-E0| >= c*eps unmet");
    return sigma * sigma + weights[0] * c * c * eps * eps;
}

WindowMoments peaked_window_moments(const SpectralMeasure& spec, double sigma,
                                    double E_hat, double L, double eps,
                                    double eta) {
    if (!(sigma > 0.0) || !(L > 0.0))
        throw InvalidParameters("peaked_window_moments: bad arguments");
    const double a = E_hat - L;
    const double b = E_hat + L;
    WindowMoments m;
    m.window_mass =
        integrate([&](double x) { return mixture_density(spec, sigma, x); }, a, b);
    if (!(m.window_mass > 0.0))
        throw QuadratureFailure("window mass vanished");
    const double first =
        integrate([&](double x) { return x * mixture_density(spec, sigma, x); }, a, b);
    const double second = integrate(
        [&](double x) { return x * x * mixture_density(spec, sigma, x); }, a, b);
    m.mean = first / m.window_mass;
    m.second_moment = second / m.window_mass;
    m.variance = m.second_moment - m.mean * m.mean;
    for (std::size_t i = 0; i < spec.energies.size(); ++i)
        if (std::abs(spec.energies[i] - E_hat) <= 0.5 * L) m.mass_G += spec.weights[i];
    if (eps > 0.0 && eta > 0.0)
        m.gap_bound = 4.0 * (1.0 / 160.0) * eps * eps * eta * eta;
    return m;
}

} // namespace gseelab
