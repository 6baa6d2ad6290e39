#include "gseelab/gsee.hpp"

#include <algorithm>
#include <cmath>

#include "gseelab/errors.hpp"

namespace gseelab {

EstimatorBackend EstimatorBackend::ideal() {
    EstimatorBackend b;
    b.kind_ = BackendKind::IdealFunction;
    b.c1_ = b.c2_ = 1.0;
    return b;
}

EstimatorBackend EstimatorBackend::poly(const ApproxOptions& opt) {
    EstimatorBackend b;
    b.kind_ = BackendKind::PolyBlockEncoding;
    // block-encoded polynomial comes out (2, m+2, 0)-normalized
    b.c1_ = b.c2_ = 2.0;
    b.opt_ = opt;
    return b;
}

EstimatorBackend EstimatorBackend::trig(const ApproxOptions& opt) {
    EstimatorBackend b;
    b.kind_ = BackendKind::TrigEvolution;
    b.c1_ = b.c2_ = 1.0;
    b.opt_ = opt;
    return b;
}

OracleFunction EstimatorBackend::threshold(double a, double b, double eps_prime,
                                           ModelDomain dom) {
    if (kind_ == BackendKind::IdealFunction) return ideal_threshold(a, b, eps_prime);
    const auto key = std::make_tuple(a, b, eps_prime, static_cast<int>(dom));
    {
        std::lock_guard<std::mutex> lock(*mu_);
        auto it = thr_cache_.find(key);
        if (it != thr_cache_.end()) return it->second;
    }
    OracleFunction f;
    if (kind_ == BackendKind::PolyBlockEncoding) {
        f = poly_function(threshold_poly(a, b, eps_prime, opt_), m1_);
    } else {
        // Evolution model: realize the threshold through y = cos(x/2), which is
        // decreasing on [0,1], so a low-pass in x is a high-pass in y; flip the
        // sign to reuse the low-pass construction.
        if (dom != ModelDomain::ZeroOne)
            throw InvalidParameters("trig backend needs energies in [0,1]");
        const double ap = -std::cos(0.5 * a);
        const double bp = -std::cos(0.5 * b);
        BoundedPoly tp = threshold_poly(ap, bp, eps_prime, opt_);
        ChebSeries s = tp.series;
        f.g = [s](double x) { return s.eval(-std::cos(0.5 * x)); };
        f.lo = 0.0;
        f.hi = 1.0;
        f.cost.degree = tp.degree;
        f.cost.queries = tp.degree; // QET-U: O(d) controlled-evolution queries
        f.cost.ancillas = 1;
        f.cost.evolution_time = 0.5;
    }
    std::lock_guard<std::mutex> lock(*mu_);
    thr_cache_.emplace(key, f);
    return f;
}

ShiftFamily EstimatorBackend::gaussian(double sigma, double eps2) {
    if (kind_ == BackendKind::IdealFunction) return ideal_gaussian_family(sigma);
    const auto key = std::make_pair(sigma, eps2);
    {
        std::lock_guard<std::mutex> lock(*mu_);
        auto it = gauss_cache_.find(key);
        if (it != gauss_cache_.end()) return it->second;
    }
    ShiftFamily fam;
    if (kind_ == BackendKind::PolyBlockEncoding) {
        fam = poly_family(gaussian_core_poly(sigma, eps2, opt_), m2_);
    } else {
        fam = trig_family(gaussian_cosine_series(sigma, eps2, opt_.grid_points));
    }
    std::lock_guard<std::mutex> lock(*mu_);
    gauss_cache_.emplace(key, fam);
    return fam;
}

GseeSchedule make_schedule(double eps, double delta, double Delta, double eta,
                           double c1, int m1, double c2, int m2) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || !(Delta > 0.0) ||
        !(eta > 0.0 && eta <= 1.0))
        throw InvalidParameters("make_schedule: parameters out of range");
    if (c1 < 1.0 || c2 < 1.0)
        throw InvalidParameters("make_schedule: normalizations below 1 unsupported");
    GseeSchedule s;
    s.eps = eps;
    s.delta = delta;
    s.Delta = Delta;
    s.eta = eta;
    s.c1 = c1;
    s.c2 = c2;
    s.m1 = m1;
    s.m2 = m2;
    s.basic_branch = eps >= Delta / 8.0;
    s.sigma = Delta / (5.0 * std::sqrt(std::log(M_E * c2)) *
                       std::sqrt(std::log(M_E * Delta / (eta * eps))));
    s.eps1 = std::min(eps / 1.1, s.sigma);
    const double lg = std::log(M_E * s.sigma / s.eps1);
    s.w = 2.0 * s.sigma * std::sqrt(lg);
    s.eps2 = 0.0075 * s.eps1 * s.eta / (s.sigma * lg);
    const double inner = std::max(
        2.0 * s.w * s.w / (eps * eps) * std::log(6.0 / delta), std::log(3.0 / delta));
    s.M = static_cast<long>(
        std::ceil(32.0 * c2 * c2 / eta * std::sqrt(lg) * inner));
    s.coarse_eps = 0.5 * s.w;
    s.coarse_delta = delta / 3.0;
    if (!(s.sigma > 0.0 && s.eps1 > 0.0 && s.w > 0.0 && s.eps2 > 0.0 && s.M > 0))
        throw InvalidParameters("make_schedule: degenerate derived values");
    return s;
}

namespace {

void domain_bracket(ModelDomain d, double& l, double& r) {
    if (d == ModelDomain::PM1) {
        l = -1.0;
        r = 1.0;
    } else {
        l = 0.0;
        r = 1.0;
    }
}

} // namespace

EstimateResult basic_gsee(double eps, double delta, double eta,
                          EstimatorBackend& backend, AcceptanceOracle& oracle,
                          const SpectralMeasure& spec, SpecAware* aware) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || !(eta > 0.0 && eta <= 1.0))
        throw InvalidParameters("basic_gsee: parameters out of range");
    BisectionState st;
    domain_bracket(spec.model_domain, st.l, st.r);
    st.L = std::max<long>(1, static_cast<long>(
                                 std::ceil(std::log(1.0 / eps) / std::log(1.5))));
    st.eps_prime = std::min(std::sqrt(0.1 * eta), 0.05);
    const double c = backend.c1();
    st.M_per_round = static_cast<long>(
        std::ceil(12.0 * c * c / eta * std::log(static_cast<double>(st.L) / delta)));
    const double threshold = chernoff_threshold(c, eta, st.M_per_round);

    EstimateResult res;
    while (st.r - st.l > 2.0 * eps) {
        const double a = (2.0 * st.l + st.r) / 3.0;
        const double b = (st.l + 2.0 * st.r) / 3.0;
        const OracleFunction f = backend.threshold(a, b, st.eps_prime, spec.model_domain);
        const double q = oracle.accept_prob(spec, f);
        long K = 0;
        for (long i = 0; i < st.M_per_round; ++i)
            if (oracle.sample_with_prob(q, f.cost)) ++K;
        const bool above = static_cast<double>(K) >= threshold;
        if (aware) {
            if (aware->E0 <= a)
                aware->rounds_correct = aware->rounds_correct && above;
            else if (aware->E0 >= b)
                aware->rounds_correct = aware->rounds_correct && !above;
        }
        if (above)
            st.r = b;
        else
            st.l = a;
        if (aware && aware->rounds_correct)
            aware->bracket_ok =
                aware->bracket_ok && aware->E0 >= st.l - 1e-12 && aware->E0 <= st.r + 1e-12;
        ++res.bisection_rounds;
    }
    res.estimate = 0.5 * (st.l + st.r);
    res.cost = oracle.run_report();
    res.schedule.eps = eps;
    res.schedule.delta = delta;
    res.schedule.eta = eta;
    res.schedule.c1 = backend.c1();
    return res;
}

EstimateResult adv_gsee(const GseeSchedule& s, EstimatorBackend& backend,
                        AcceptanceOracle& oracle, const SpectralMeasure& spec,
                        SpecAware* aware) {
    if (s.basic_branch) {
        EstimateResult res = basic_gsee(s.eps, s.delta, s.eta, backend, oracle, spec, aware);
        res.schedule = s;
        return res;
    }
    EstimateResult coarse =
        basic_gsee(s.coarse_eps, s.coarse_delta, s.eta, backend, oracle, spec, aware);
    const double e0_tilde = coarse.estimate;
    const double wlo = e0_tilde - s.w;
    const double whi = e0_tilde + s.w;

    if (aware) {
        // Excited levels must clear sigma*sqrt(ln(0.5 c2^2/eps'')) from every
        // shift in the window; only meaningful when the coarse stage landed.
        if (std::abs(e0_tilde - aware->E0) <= 0.5 * s.w + 1e-12) {
            const double arg = 0.5 * s.c2 * s.c2 / s.eps2;
            const double dist = s.sigma * std::sqrt(std::max(0.0, std::log(arg)));
            for (std::size_t j = 1; j < spec.energies.size(); ++j)
                if (spec.energies[j] - whi < dist - 1e-12) aware->separation_ok = false;
        }
    }

    const ShiftFamily fam = backend.gaussian(s.sigma, s.eps2);
    WindowLaw law(spec, fam, backend.c2(), wlo, whi);
    double sum = 0.0;
    long K = 0;
    for (long i = 0; i < s.M; ++i) {
        const double xi = oracle.rng().uniform(wlo, whi);
        if (oracle.sample_with_prob(law.q(xi), law.cost())) {
            sum += xi;
            ++K;
        }
    }
    if (aware) aware->K_observed = K;
    if (K == 0)
        throw NoAcceptedSamples(
            "refinement stage accepted nothing (expected rate >= eta/(4 c2^2 sqrt(ln e sigma/eps1)))");
    EstimateResult res;
    res.estimate = sum / static_cast<double>(K);
    res.accepted_samples = K;
    res.coarse_estimate = e0_tilde;
    res.bisection_rounds = coarse.bisection_rounds;
    res.cost = oracle.run_report();
    res.schedule = s;
    return res;
}

long hoeffding_rounds(double eps_half, double w, double delta) {
    if (!(eps_half > 0.0) || !(w > 0.0) || !(delta > 0.0 && delta < 1.0))
        throw InvalidParameters("hoeffding_rounds: bad arguments");
    const double k = 8.0 * w * w / (eps_half * eps_half) * std::log(6.0 / delta);
    return std::max<long>(1, static_cast<long>(std::ceil(k)));
}

double chernoff_threshold(double c, double eta, long M) {
    if (!(c >= 1.0) || !(eta > 0.0 && eta <= 1.0) || M <= 0)
        throw InvalidParameters("chernoff_threshold: bad arguments");
    return 0.5 * eta * static_cast<double>(M) / (c * c);
}

double kl_lower_bound(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0))
        throw InvalidParameters("kl_lower_bound: bad arguments");
    const double d = x - y;
    return d * d / (2.0 * std::max(x, y));
}

std::vector<SweepRow> interpolation_sweep(const std::vector<double>& beta_grid,
                                          double eps, double delta,
                                          double Delta_true, double eta,
                                          EstimatorBackend& backend,
                                          const SpectralMeasure& spec,
                                          int seeds, std::uint64_t master_seed) {
    std::vector<SweepRow> rows;
    const double e0 = spec.energies.front();
    for (double beta : beta_grid) {
        if (beta < 0.0 || beta > 1.0)
            throw InvalidParameters("interpolation_sweep: beta outside [0,1]");
        const double Delta = std::pow(eps, beta) * std::pow(Delta_true, 1.0 - beta);
        const GseeSchedule s =
            make_schedule(eps, delta, Delta, eta, backend.c1(), backend.m1(),
                          backend.c2(), backend.m2());
        SweepRow row;
        row.beta = beta;
        row.Delta = Delta;
        double circ = 0.0, abserr = 0.0;
        int succ = 0;
        for (int t = 0; t < seeds; ++t) {
            AcceptanceOracle oracle(backend.kind(), backend.c2(), backend.m2(),
                                    Rng::stream(master_seed, static_cast<std::uint64_t>(t)));
            const EstimateResult r = adv_gsee(s, backend, oracle, spec);
            circ += static_cast<double>(r.cost.circuits);
            abserr += std::abs(r.estimate - e0);
            if (std::abs(r.estimate - e0) <= eps) ++succ;
            row.max_depth = std::max(row.max_depth, r.cost.max_depth);
        }
        row.circuits_mean = circ / seeds;
        row.success_rate = static_cast<double>(succ) / seeds;
        row.mean_abs_err = abserr / seeds;
        rows.push_back(row);
    }
    return rows;
}

} // namespace gseelab
