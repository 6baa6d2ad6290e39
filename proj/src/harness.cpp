#include "gseelab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "gseelab/errors.hpp"
#include "gseelab/polyapprox.hpp"
#include "gseelab/quadrature.hpp"
#include "gseelab/rng.hpp"

namespace gseelab {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> grid_or(const std::vector<double>& g, double fallback) {
    return g.empty() ? std::vector<double>{fallback} : g;
}

struct Task {
    long index = 0;
    double eps = 0, delta = 0, Delta = 0, eta = 0, beta = 0, sigma = 0;
};

} // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.algorithm = j.value("algorithm", c.algorithm);
    c.backend = j.value("backend", c.backend);
    if (j.contains("spectrum")) {
        const auto& s = j.at("spectrum");
        c.spec_file = s.value("file", std::string{});
        if (s.contains("energies")) c.energies = s.at("energies").get<std::vector<double>>();
        if (s.contains("weights")) c.weights = s.at("weights").get<std::vector<double>>();
        c.model_domain = s.value("domain", c.model_domain);
        c.family_levels = s.value("levels", 0);
        c.family_E0 = s.value("E0", c.family_E0);
        c.family_gap = s.value("gap", c.family_gap);
        c.family_p0 = s.value("p0", c.family_p0);
    }
    // flat spectrum keys are accepted as a convenience
    if (j.contains("energies")) c.energies = j.at("energies").get<std::vector<double>>();
    if (j.contains("weights")) c.weights = j.at("weights").get<std::vector<double>>();
    auto grid = [&](const char* key) -> std::vector<double> {
        if (!j.contains(key)) return {};
        if (j.at(key).is_number()) return {j.at(key).get<double>()};
        return j.at(key).get<std::vector<double>>();
    };
    c.eps = grid("eps");
    c.delta = grid("delta");
    c.Delta = grid("Delta");
    c.eta = grid("eta");
    c.beta = grid("beta");
    c.sigma = grid("sigma");
    if (j.contains("E_hat")) c.E_hat = j.at("E_hat").get<double>();
    c.seeds = j.value("seeds", 1);
    c.master_seed = j.value("master_seed", std::uint64_t{1});
    c.threads = j.value("threads", 1);
    c.max_degree = j.value("max_degree", 4000);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.stem = j.value("stem", c.stem);
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["algorithm"] = c.algorithm;
    j["backend"] = c.backend;
    nlohmann::json s;
    s["file"] = c.spec_file;
    s["energies"] = c.energies;
    s["weights"] = c.weights;
    s["domain"] = c.model_domain;
    s["levels"] = c.family_levels;
    s["E0"] = c.family_E0;
    s["gap"] = c.family_gap;
    s["p0"] = c.family_p0;
    j["spectrum"] = s;
    j["eps"] = c.eps;
    j["delta"] = c.delta;
    j["Delta"] = c.Delta;
    j["eta"] = c.eta;
    j["beta"] = c.beta;
    j["sigma"] = c.sigma;
    if (c.E_hat) j["E_hat"] = *c.E_hat;
    j["seeds"] = c.seeds;
    j["master_seed"] = c.master_seed;
    j["max_degree"] = c.max_degree;
    // out paths and thread count do not affect results; excluded from the hash
    return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = config_to_json(cfg).dump() + kVersionTag;
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SpectralMeasure spec_from_config(const ExperimentConfig& cfg) {
    const ModelDomain dom =
        cfg.model_domain == "01" ? ModelDomain::ZeroOne : ModelDomain::PM1;
    if (!cfg.spec_file.empty()) {
        const DenseHermitian h = load_dense(cfg.spec_file);
        // uniform reference state
        std::vector<std::complex<double>> psi(
            h.dimension, std::complex<double>(1.0 / std::sqrt((double)h.dimension), 0.0));
        return from_dense(h, psi, dom);
    }
    if (!cfg.energies.empty()) return synth(cfg.energies, cfg.weights, dom);
    const int n = cfg.family_levels > 0 ? cfg.family_levels : 2;
    std::vector<double> e(n), w(n);
    const double top = dom == ModelDomain::PM1 ? 0.9 : 0.95;
    e[0] = cfg.family_E0;
    w[0] = cfg.family_p0;
    if (n == 1) {
        w[0] = 1.0;
    } else {
        e[1] = cfg.family_E0 + cfg.family_gap;
        const double rest = (1.0 - cfg.family_p0) / (n - 1);
        for (int i = 1; i < n; ++i) {
            if (i > 1)
                e[i] = e[1] + (top - e[1]) * (double)(i - 1) / (double)(n - 1);
            w[i] = rest;
        }
    }
    return synth(e, w, dom);
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.config_hash_hex = config_hash(cfg);

    EstimatorBackend backend =
        cfg.backend == "poly"
            ? EstimatorBackend::poly(ApproxOptions{cfg.max_degree})
            : (cfg.backend == "trig" ? EstimatorBackend::trig(ApproxOptions{cfg.max_degree})
                                     : EstimatorBackend::ideal());
    const SpectralMeasure spec = spec_from_config(cfg);
    const double E0 = spec.energies.front();

    const auto eps_g = grid_or(cfg.eps, 0.01);
    const auto delta_g = grid_or(cfg.delta, 0.1);
    const auto Delta_g = grid_or(cfg.Delta, 0.3);
    const auto eta_g = grid_or(cfg.eta, 0.5);
    const auto sigma_g = grid_or(cfg.sigma, 0.1);
    const auto beta_g =
        cfg.beta.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : cfg.beta;

    if (cfg.algorithm == "sweep") {
        auto rows = interpolation_sweep(beta_g, eps_g[0], delta_g[0], Delta_g[0],
                                        eta_g[0], backend, spec,
                                        std::max(cfg.seeds, 1), cfg.master_seed);
        long idx = 0;
        for (const auto& s : rows) {
            TrialRow r;
            r.index = idx++;
            r.eps = eps_g[0];
            r.delta = delta_g[0];
            r.Delta = s.Delta;
            r.eta = eta_g[0];
            r.beta = s.beta;
            r.estimate = s.success_rate;
            r.abs_err = s.mean_abs_err;
            r.success = s.success_rate >= 1.0 - delta_g[0] ? 1 : 0;
            r.circuits = static_cast<long>(s.circuits_mean);
            r.max_depth = s.max_depth;
            rec.rows.push_back(r);
        }
        rec.schedule_echo = {{"algorithm", "sweep"},
                             {"eps", eps_g[0]},
                             {"delta", delta_g[0]},
                             {"Delta_true", Delta_g[0]},
                             {"eta", eta_g[0]}};
    } else if (cfg.algorithm == "approx") {
        long idx = 0;
        for (double sg : sigma_g)
            for (double e2 : eps_g) {
                TrialRow r;
                r.index = idx++;
                r.sigma = sg;
                r.eps = e2;
                try {
                    if (cfg.backend == "trig") {
                        const CosineSeries s = gaussian_cosine_series(sg, e2);
                        r.estimate = s.certified_error;
                        r.max_depth = 2L * s.N;
                    } else {
                        const BoundedPoly p =
                            gaussian_core_poly(sg, e2, ApproxOptions{cfg.max_degree});
                        r.estimate = p.certified_error;
                        r.max_depth = p.degree;
                    }
                    r.success = r.estimate <= e2 ? 1 : 0;
                } catch (const Error& e) {
                    r.status = std::string("error: ") + e.what();
                }
                rec.rows.push_back(r);
            }
        rec.schedule_echo = {{"algorithm", "approx"}, {"backend", cfg.backend}};
    } else {
        // pre-launch validation of every grid tuple
        std::vector<Task> tasks;
        long idx = 0;
        for (double e : eps_g)
            for (double d : delta_g)
                for (double D : Delta_g)
                    for (double h : eta_g) {
                        if (cfg.algorithm == "cert") {
                            for (double sg : sigma_g) {
                                make_cert_params(e, h, sg, cfg.E_hat.value_or(E0), d);
                                for (int t = 0; t < cfg.seeds; ++t)
                                    tasks.push_back({idx++, e, d, D, h, 0.0, sg});
                            }
                        } else {
                            make_schedule(e, d, D, h, backend.c1(), backend.m1(),
                                          backend.c2(), backend.m2());
                            for (int t = 0; t < cfg.seeds; ++t)
                                tasks.push_back({idx++, e, d, D, h, 0.0, 0.0});
                        }
                    }
        // warn-level promise cross-check (estimators never see p0)
        for (const Task& t : tasks)
            if (t.eta > spec.overlap0() + 1e-12) {
                std::fprintf(stderr, "warning: eta=%g exceeds fixture overlap %g\n",
                             t.eta, spec.overlap0());
                break;
            }

        rec.rows.assign(tasks.size(), TrialRow{});
        if (!tasks.empty()) {
            const Task& f = tasks.front();
            if (cfg.algorithm == "cert") {
                const CertParams p =
                    make_cert_params(f.eps, f.eta, f.sigma, cfg.E_hat.value_or(E0), f.delta);
                rec.schedule_echo = {{"algorithm", "cert"},
                                     {"tau_target", p.tau_target},
                                     {"L", p.L},
                                     {"sigma", p.sigma},
                                     {"E_hat", p.E_hat}};
            } else {
                const GseeSchedule s =
                    make_schedule(f.eps, f.delta, f.Delta, f.eta, backend.c1(),
                                  backend.m1(), backend.c2(), backend.m2());
                rec.schedule_echo = {{"algorithm", cfg.algorithm},
                                     {"sigma", s.sigma},
                                     {"eps1", s.eps1},
                                     {"w", s.w},
                                     {"eps2", s.eps2},
                                     {"M", s.M},
                                     {"basic_branch", s.basic_branch}};
            }
        }

        std::atomic<long> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const long i = cursor.fetch_add(1);
                if (i >= static_cast<long>(tasks.size())) return;
                const Task& t = tasks[i];
                TrialRow r;
                r.index = t.index;
                r.seed = cfg.master_seed;
                r.eps = t.eps;
                r.delta = t.delta;
                r.Delta = t.Delta;
                r.eta = t.eta;
                r.sigma = t.sigma;
                AcceptanceOracle oracle(backend.kind(), backend.c2(), backend.m2(),
                                        Rng::stream(cfg.master_seed,
                                                    static_cast<std::uint64_t>(t.index)));
                try {
                    if (cfg.algorithm == "cert") {
                        const CertParams p = make_cert_params(
                            t.eps, t.eta, t.sigma, cfg.E_hat.value_or(E0), t.delta);
                        const CertVerdict v = gsee_cert(p, spec, backend, oracle);
                        r.estimate = v.refined_estimate;
                        r.abs_err = std::abs(v.refined_estimate - E0);
                        r.success = v.decision == CertDecision::Accept ? 1 : 0;
                        r.accepted = v.samples_used;
                        r.circuits = v.cost.circuits;
                        r.queries = v.cost.queries_total;
                        r.max_depth = v.cost.max_depth;
                        r.status = v.decision == CertDecision::Accept ? "accept" : "reject";
                    } else {
                        EstimateResult res;
                        if (cfg.algorithm == "basic") {
                            res = basic_gsee(t.eps, t.delta, t.eta, backend, oracle, spec);
                        } else {
                            const GseeSchedule s = make_schedule(
                                t.eps, t.delta, t.Delta, t.eta, backend.c1(),
                                backend.m1(), backend.c2(), backend.m2());
                            res = adv_gsee(s, backend, oracle, spec);
                        }
                        r.estimate = res.estimate;
                        r.abs_err = std::abs(res.estimate - E0);
                        r.success = r.abs_err <= t.eps ? 1 : 0;
                        r.accepted = res.accepted_samples;
                        r.circuits = res.cost.circuits;
                        r.queries = res.cost.queries_total;
                        r.max_depth = res.cost.max_depth;
                    }
                } catch (const Error& e) {
                    r.status = std::string("error: ") + e.what();
                    r.success = 0;
                }
                rec.rows[i] = r;
            }
        };
        const int nthreads = std::max(1, cfg.threads);
        if (nthreads == 1 || tasks.size() <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }

    long succ = 0, ok = 0;
    double errsum = 0.0, circsum = 0.0;
    for (const auto& r : rec.rows) {
        succ += r.success;
        circsum += static_cast<double>(r.circuits);
        if (r.status.rfind("error", 0) != 0) {
            ++ok;
            errsum += r.abs_err;
        }
        if (r.max_depth > rec.max_depth) rec.max_depth = r.max_depth;
    }
    const long n = static_cast<long>(rec.rows.size());
    if (n > 0) {
        rec.success_rate = static_cast<double>(succ) / n;
        rec.success_stderr =
            std::sqrt(rec.success_rate * (1.0 - rec.success_rate) / n);
        rec.circuits_mean = circsum / n;
    }
    if (ok > 0) rec.mean_abs_err = errsum / ok;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string record_csv(const RunRecord& rec) {
    std::string out =
        "index,seed,eps,delta,Delta,eta,beta,sigma,estimate,abs_err,success,"
        "circuits,queries,max_depth,accepted,status\n";
    for (const auto& r : rec.rows) {
        out += std::to_string(r.index) + ',' + std::to_string(r.seed) + ',' +
               fmt(r.eps) + ',' + fmt(r.delta) + ',' + fmt(r.Delta) + ',' +
               fmt(r.eta) + ',' + fmt(r.beta) + ',' + fmt(r.sigma) + ',' +
               fmt(r.estimate) + ',' + fmt(r.abs_err) + ',' +
               std::to_string(r.success) + ',' + std::to_string(r.circuits) + ',' +
               std::to_string(r.queries) + ',' + std::to_string(r.max_depth) + ',' +
               std::to_string(r.accepted) + ',' + r.status + '\n';
    }
    return out;
}

nlohmann::json record_json(const ExperimentConfig& cfg, const RunRecord& rec) {
    nlohmann::json j;
    j["config"] = config_to_json(cfg);
    j["config_hash"] = rec.config_hash_hex;
    j["version"] = kVersionTag;
    j["schedule"] = rec.schedule_echo;
    j["trials"] = rec.rows.size();
    j["success_rate"] = rec.success_rate;
    j["success_stderr"] = rec.success_stderr;
    j["mean_abs_err"] = rec.mean_abs_err;
    j["circuits_mean"] = rec.circuits_mean;
    j["max_depth"] = rec.max_depth;
    j["wall_seconds"] = rec.wall_seconds;
    return j;
}

void emit(const ExperimentConfig& cfg, const RunRecord& rec) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto base = std::filesystem::path(cfg.out_dir) / cfg.stem;
    {
        std::ofstream f(base.string() + ".csv", std::ios::binary);
        f << record_csv(rec);
    }
    {
        std::ofstream f(base.string() + ".json", std::ios::binary);
        f << record_json(cfg, rec).dump(2) << '\n';
    }
}

namespace {

double sgn_integral(const std::function<double(double)>& f, double lo, double hi) {
    // split at 0 so the adaptive rule never straddles the kink
    if (lo < 0.0 && hi > 0.0)
        return integrate(f, lo, 0.0, {1e-9}) + integrate(f, 0.0, hi, {1e-9});
    return integrate(f, lo, hi, {1e-9});
}

} // namespace

LemmaReport lemma_suite(bool throw_on_violation) {
    LemmaReport rep;
    auto fail = [&](const std::string& what) {
        ++rep.violations;
        rep.failures.push_back(what);
        if (throw_on_violation) throw LemmaViolation(what);
    };

    const double tol = 1e-9;
    const std::vector<double> sigmas{0.05, 0.08, 0.12, 0.2, 0.35, 0.6};
    const std::vector<double> ratios{0.03, 0.08, 0.15, 0.3, 0.6, 1.0};
    const std::vector<double> scents{-0.5, -0.3, -0.1, 0.1, 0.3, 0.5};

    bool ideal_bad = false, noisy_bad = false;
    for (double sigma : sigmas)
        for (double rho : ratios)
            for (double sc : scents) {
                const double eps = rho * sigma;
                const double w = 2.0 * sigma * std::sqrt(std::log(M_E * sigma / eps));
                const double s = sc * w;
                const double lo = s - w, hi = s + w;
                auto f2 = [&](double x) { return std::exp(-x * x / (sigma * sigma)); };
                ++rep.tuples_checked;

                const double I0 = integrate(f2, lo, hi, {1e-11});
                const double I1 =
                    integrate([&](double x) { return x * f2(x); }, lo, hi, {1e-11});
                if (I0 < 1.12 * sigma - tol || std::abs(I1) > sigma * eps / (2.0 * M_E) + tol ||
                    std::abs(I1) / I0 > eps / (2.24 * M_E) + tol) {
                    ideal_bad = true;
                    fail("ideal truncated-mean bound failed at sigma=" +
                         std::to_string(sigma) + " eps=" + std::to_string(eps) +
                         " s=" + std::to_string(s));
                }

                const double p = 0.03 * eps / (sigma * std::log(M_E * sigma / eps));
                const std::function<double(double)> variants[2] = {
                    [&, p](double x) { return std::max(f2(x) + p * (x >= 0 ? 1.0 : -1.0), 0.0); },
                    [&, p](double x) { return std::max(f2(x) - p, 0.0); }};
                for (const auto& g : variants) {
                    const double J0 = sgn_integral(g, lo, hi);
                    const double J1 =
                        sgn_integral([&](double x) { return x * g(x); }, lo, hi);
                    if (J0 < sigma - tol || std::abs(J1) > 0.55 * sigma * eps + tol ||
                        std::abs(J1) / J0 > 0.55 * eps + tol) {
                        noisy_bad = true;
                        fail("perturbed truncated-mean bound failed at sigma=" +
                             std::to_string(sigma) + " eps=" + std::to_string(eps) +
                             " s=" + std::to_string(s));
                    }
                }
            }
    rep.ideal_ok = !ideal_bad;
    rep.noisy_ok = !noisy_bad;

    // excited-level separation over the refinement window, two-level fixture
    bool sep_bad = false;
    {
        const double E0 = -0.2, Delta_true = 0.3, E1 = E0 + Delta_true;
        const double eta = 0.5, delta = 0.1, eps = 0.005;
        for (double Delta : {Delta_true, 0.2}) {
            const GseeSchedule s = make_schedule(eps, delta, Delta, eta, 1.0, 1, 1.0, 1);
            const double bound =
                s.sigma * std::sqrt(std::log(0.5 * s.c2 * s.c2 / s.eps2));
            for (double center : {E0 - s.coarse_eps, E0, E0 + s.coarse_eps})
                for (int i = 0; i <= 100; ++i) {
                    const double xi = center - s.w + 2.0 * s.w * i / 100.0;
                    ++rep.tuples_checked;
                    if (E1 - xi < bound) {
                        sep_bad = true;
                        fail("separation inequality failed at Delta=" +
                             std::to_string(Delta) + " xi=" + std::to_string(xi));
                    }
                }
        }
    }
    rep.separation_ok = !sep_bad;

    // cosine-series invariants
    bool series_bad = false;
    {
        const std::pair<double, double> cases[] = {{0.1, 1e-3}, {0.05, 1e-4}, {0.2, 1e-2}};
        for (auto [sg, e2] : cases) {
            ++rep.tuples_checked;
            const CosineSeries s = gaussian_cosine_series(sg, e2);
            double csum = 0.0;
            bool pos = true;
            for (double a : s.coeffs) {
                csum += a;
                if (!(a > 0.0)) pos = false;
            }
            if (!pos || csum > 1.0 + 1e-12 || s.certified_error > e2) {
                series_bad = true;
                fail("cosine-series invariant failed at sigma=" + std::to_string(sg) +
                     " eps=" + std::to_string(e2));
            }
        }
    }
    rep.series_ok = !series_bad;
    return rep;
}

} // namespace gseelab
