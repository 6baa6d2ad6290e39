#pragma once

#include <functional>
#include <memory>

#include "gseelab/polyapprox.hpp"
#include "gseelab/rng.hpp"
#include "gseelab/spectrum.hpp"

namespace gseelab {

enum class BackendKind { IdealFunction, PolyBlockEncoding, TrigEvolution };

// One operator function g applied to H, as seen by the simulated measurement:
// only the values g(E_j) matter. `cost` is charged per circuit.
struct OracleFunction {
    std::function<double(double)> g;
    double lo = -1e300;
    double hi = 1e300;
    QueryCost cost;
};

// A shift family y -> g0(y) realizing g_xi(x) = g0(x - xi); the rejection
// sampler shifts the proposal through it.
struct ShiftFamily {
    std::function<double(double)> core;
    double core_lo = -1e300;
    double core_hi = 1e300;
    QueryCost cost;

    OracleFunction at(double xi) const;
};

// Factories. Ideal functions have c = 1 and zero query cost.
OracleFunction ideal_threshold(double a, double b, double eps1);
OracleFunction poly_function(const BoundedPoly& p, int base_ancillas = 1);
ShiftFamily ideal_gaussian_family(double sigma_g);
ShiftFamily poly_family(const BoundedPoly& core, int base_ancillas = 1);
ShiftFamily trig_family(const CosineSeries& s);

struct CostReport {
    long circuits = 0;
    long queries_total = 0;
    long max_depth = 0; // max single-circuit queries

    void add(const QueryCost& c) {
        ++circuits;
        queries_total += c.queries;
        if (c.queries > max_depth) max_depth = c.queries;
    }
    void merge(const CostReport& o) {
        circuits += o.circuits;
        queries_total += o.queries_total;
        if (o.max_depth > max_depth) max_depth = o.max_depth;
    }
};

// Simulated ancilla measurement. accept_prob is the exact law
// c^-2 sum_j p_j g(E_j)^2; sample_outcome draws one Bernoulli from it and
// advances the counters. One instance per worker; never shared concurrently.
class AcceptanceOracle {
  public:
    AcceptanceOracle(BackendKind kind, double c, int ancillas, Rng rng)
        : kind_(kind), c_(c), m_(ancillas), rng_(rng) {}

    BackendKind kind() const { return kind_; }
    double c() const { return c_; }
    int ancillas() const { return m_; }

    double accept_prob(const SpectralMeasure& spec, const OracleFunction& g) const;
    bool sample_outcome(const SpectralMeasure& spec, const OracleFunction& g);
    bool sample_with_prob(double q, const QueryCost& cost);

    CostReport run_report() const { return counters_; }
    void reset_counters() { counters_ = CostReport{}; }
    Rng& rng() { return rng_; }

  private:
    BackendKind kind_;
    double c_;
    int m_;
    Rng rng_;
    CostReport counters_;
};

// Precomputed acceptance law q(x) = c^-2 sum_j p_j core(E_j - x)^2 over a
// proposal window. Backed by a Chebyshev table validated against the direct
// sum (falls back to direct evaluation if validation fails), so the hot loop
// stays cheap without changing the law.
class WindowLaw {
  public:
    WindowLaw(const SpectralMeasure& spec, const ShiftFamily& family, double c,
              double wlo, double whi);

    double q(double x) const;
    double direct(double x) const;
    const QueryCost& cost() const { return family_.cost; }
    bool tabulated() const { return tabulated_; }

  private:
    SpectralMeasure spec_;
    ShiftFamily family_;
    double inv_c2_;
    double wlo_, whi_;
    bool tabulated_ = false;
    ChebSeries table_;
};

} // namespace gseelab
