#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "gseelab/oracle.hpp"
#include "gseelab/rejection.hpp"
#include "gseelab/spectrum.hpp"

namespace gseelab {

// Parameter schedule of the refinement estimator. Derived fields follow the
// algorithm's formulas exactly; see make_schedule.
struct GseeSchedule {
    // inputs
    double eps = 0.0, delta = 0.0, Delta = 0.0, eta = 0.0;
    double c1 = 1.0, c2 = 1.0;
    int m1 = 1, m2 = 1;
    // derived
    double sigma = 0.0;
    double eps1 = 0.0;
    double w = 0.0;
    double eps2 = 0.0; // the approximant accuracy eps''
    long M = 0;        // refinement rounds
    double coarse_eps = 0.0;   // w/2
    double coarse_delta = 0.0; // delta/3
    bool basic_branch = false; // eps >= Delta/8
};

struct BisectionState {
    double l = 0.0, r = 0.0;
    long L = 0;           // iteration budget ceil(log_{3/2} 1/eps)
    long M_per_round = 0;
    double eps_prime = 0.0; // min(sqrt(0.1 eta), 0.05)
};

struct EstimateResult {
    double estimate = 0.0;
    long accepted_samples = 0;
    CostReport cost;
    GseeSchedule schedule;
    long bisection_rounds = 0;
    double coarse_estimate = 0.0;
};

// Test-only diagnostics that may read the hidden spectrum. Production paths
// never touch this.
struct SpecAware {
    double E0 = 0.0;
    double Delta_true = 0.0;
    bool bracket_ok = true;    // bracket contained E0 while all rounds landed correctly
    bool rounds_correct = true;
    bool separation_ok = true; // excited-level distance bound over the window
    long K_observed = -1;      // accepted count of the refinement stage
};

// Constructs threshold/Gaussian approximants for one backend, with caching
// (brackets repeat across seeds, so construction cost amortizes away).
class EstimatorBackend {
  public:
    static EstimatorBackend ideal();
    static EstimatorBackend poly(const ApproxOptions& opt = {});
    static EstimatorBackend trig(const ApproxOptions& opt = {});

    BackendKind kind() const { return kind_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    int m1() const { return m1_; }
    int m2() const { return m2_; }

    OracleFunction threshold(double a, double b, double eps_prime, ModelDomain dom);
    ShiftFamily gaussian(double sigma, double eps2);

  private:
    BackendKind kind_ = BackendKind::IdealFunction;
    double c1_ = 1.0, c2_ = 1.0;
    int m1_ = 1, m2_ = 1;
    ApproxOptions opt_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    std::map<std::tuple<double, double, double, int>, OracleFunction> thr_cache_;
    std::map<std::pair<double, double>, ShiftFamily> gauss_cache_;
};

GseeSchedule make_schedule(double eps, double delta, double Delta, double eta,
                           double c1, int m1, double c2, int m2);

EstimateResult basic_gsee(double eps, double delta, double eta,
                          EstimatorBackend& backend, AcceptanceOracle& oracle,
                          const SpectralMeasure& spec, SpecAware* aware = nullptr);

EstimateResult adv_gsee(const GseeSchedule& schedule, EstimatorBackend& backend,
                        AcceptanceOracle& oracle, const SpectralMeasure& spec,
                        SpecAware* aware = nullptr);

// Concentration helpers (pure closed forms).
long hoeffding_rounds(double eps_half, double w, double delta);
double chernoff_threshold(double c, double eta, long M);
double kl_lower_bound(double x, double y); // (x-y)^2 / (2 max(x,y))

struct SweepRow {
    double beta = 0.0;
    double Delta = 0.0;
    long max_depth = 0;
    double circuits_mean = 0.0;
    double success_rate = 0.0;
    double mean_abs_err = 0.0;
};

std::vector<SweepRow> interpolation_sweep(const std::vector<double>& beta_grid,
                                          double eps, double delta,
                                          double Delta_true, double eta,
                                          EstimatorBackend& backend,
                                          const SpectralMeasure& spec,
                                          int seeds, std::uint64_t master_seed);

} // namespace gseelab
