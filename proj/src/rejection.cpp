#include "gseelab/rejection.hpp"

#include <cmath>
#include <sstream>

#include "gseelab/errors.hpp"
#include "gseelab/quadrature.hpp"

namespace gseelab {
namespace {

double mixture_density(const SpectralMeasure& spec, double sigma, double x) {
    // (p * n_sigma)(x) with the normalized Gaussian density
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    double acc = 0.0;
    for (std::size_t j = 0; j < spec.energies.size(); ++j) {
        const double u = (x - spec.energies[j]) / sigma;
        acc += spec.weights[j] * std::exp(-0.5 * u * u);
    }
    return norm * acc;
}

double window_mass(const SpectralMeasure& spec, double sigma, double a, double b) {
    // Closed form via erf; the quadrature path cross-checks this in tests.
    double acc = 0.0;
    const double inv = 1.0 / (sigma * std::sqrt(2.0));
    for (std::size_t j = 0; j < spec.energies.size(); ++j) {
        const double e = spec.energies[j];
        acc += spec.weights[j] * 0.5 * (std::erf((b - e) * inv) - std::erf((a - e) * inv));
    }
    return acc;
}

} // namespace

ShiftFamily nu_family_ideal(double sigma) {
    // h^2 must equal exp(-y^2/(2 sigma^2)), so h is a Gaussian of width
    // sigma*sqrt(2) in the exp(-y^2/(2 s^2)) parametrization.
    return ideal_gaussian_family(sigma * std::sqrt(2.0));
}

RejectionRun sample_conv(const SpectralMeasure& spec, double sigma,
                         const ShiftFamily& family, const Proposal& prop,
                         AcceptanceOracle& oracle, long n_target, long trial_cap) {
    if (!(prop.a < prop.b)) throw InvalidParameters("proposal interval empty");
    if (n_target <= 0) throw InvalidParameters("n_target must be positive");
    if (trial_cap <= 0) {
        const double m2 = expected_trials_bound(sigma, prop, spec, oracle.c());
        const double cap = 50.0 * static_cast<double>(n_target) * std::ceil(m2);
        trial_cap = cap > 4e18 ? static_cast<long>(4e18) : static_cast<long>(cap);
        if (trial_cap < n_target) trial_cap = n_target;
    }
    if (trial_cap < n_target) throw InvalidParameters("trial_cap < n_target");

    WindowLaw law(spec, family, oracle.c(), prop.a, prop.b);
    RejectionRun run;
    run.accepted.reserve(static_cast<std::size_t>(n_target));
    while (static_cast<long>(run.accepted.size()) < n_target && run.trials < trial_cap) {
        const double x = oracle.rng().uniform(prop.a, prop.b);
        ++run.trials;
        if (oracle.sample_with_prob(law.q(x), law.cost())) run.accepted.push_back(x);
    }
    run.acceptance_rate =
        run.trials > 0 ? static_cast<double>(run.accepted.size()) / run.trials : 0.0;
    run.cap_exhausted = static_cast<long>(run.accepted.size()) < n_target;
    return run;
}

double expected_trials_bound(double sigma, const Proposal& window,
                             const SpectralMeasure& spec, double c) {
    if (!(sigma > 0.0) || !(window.a < window.b))
        throw InvalidParameters("expected_trials_bound: bad parameters");
    const double mass = integrate(
        [&](double x) { return mixture_density(spec, sigma, x); }, window.a, window.b);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw QuadratureFailure("window mass vanished or diverged");
    return (window.b - window.a) * c * c / (sigma * std::sqrt(2.0 * M_PI) * mass);
}

double conditioned_cdf(const SpectralMeasure& spec, double sigma,
                       const Proposal& window, double x) {
    if (x <= window.a) return 0.0;
    if (x >= window.b) return 1.0;
    const double total = window_mass(spec, sigma, window.a, window.b);
    return window_mass(spec, sigma, window.a, x) / total;
}

std::string rejection_csv(const RejectionRun& run) {
    std::ostringstream out;
    out.precision(17);
    out << "index,value\n";
    for (std::size_t i = 0; i < run.accepted.size(); ++i)
        out << i << ',' << run.accepted[i] << '\n';
    return out.str();
}

} // namespace gseelab
