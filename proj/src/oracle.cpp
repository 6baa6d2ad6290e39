#include "gseelab/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gseelab/errors.hpp"

namespace gseelab {

OracleFunction ShiftFamily::at(double xi) const {
    OracleFunction f;
    auto core_fn = core;
    f.g = [core_fn, xi](double x) { return core_fn(x - xi); };
    f.lo = core_lo <= -1e299 ? core_lo : core_lo + xi;
    f.hi = core_hi >= 1e299 ? core_hi : core_hi + xi;
    f.cost = cost;
    return f;
}

OracleFunction ideal_threshold(double a, double b, double eps1) {
    if (!(a < b)) throw InvalidParameters("ideal_threshold: a >= b");
    // Exact on both plateaus; the same erf profile the polynomial backend
    // targets bridges the transition band.
    const double m = 0.5 * (a + b);
    const double k = 2.0 * erfinv(1.0 - 0.5 * eps1) / (b - a);
    OracleFunction f;
    f.g = [=](double x) {
        if (x <= a) return 1.0;
        if (x >= b) return 0.0;
        const double v = 0.5 * eps1 + (1.0 - eps1) * 0.5 * (1.0 + std::erf(k * (m - x)));
        return std::min(1.0, std::max(0.0, v));
    };
    return f;
}

OracleFunction poly_function(const BoundedPoly& p, int base_ancillas) {
    OracleFunction f;
    ChebSeries s = p.series;
    f.g = [s](double x) { return s.eval(x); };
    f.lo = p.series.lo;
    f.hi = p.series.hi;
    f.cost = degree_for_depth(p, base_ancillas);
    return f;
}

ShiftFamily ideal_gaussian_family(double sigma_g) {
    if (!(sigma_g > 0.0)) throw InvalidParameters("sigma_g must be positive");
    ShiftFamily fam;
    fam.core = [sigma_g](double y) {
        const double u = y / sigma_g;
        return std::exp(-0.5 * u * u);
    };
    return fam;
}

ShiftFamily poly_family(const BoundedPoly& core, int base_ancillas) {
    ShiftFamily fam;
    ChebSeries s = core.series;
    fam.core = [s](double y) { return s.eval(y); };
    fam.core_lo = core.series.lo;
    fam.core_hi = core.series.hi;
    fam.cost = degree_for_depth(core, base_ancillas);
    return fam;
}

ShiftFamily trig_family(const CosineSeries& s) {
    ShiftFamily fam;
    CosineSeries cs = s;
    fam.core = [cs](double y) { return cs.eval(y); };
    fam.core_lo = -M_PI;
    fam.core_hi = M_PI;
    fam.cost = degree_for_depth(s);
    return fam;
}

double AcceptanceOracle::accept_prob(const SpectralMeasure& spec,
                                     const OracleFunction& g) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < spec.energies.size(); ++j) {
        const double e = spec.energies[j];
        if (e < g.lo - 1e-12 || e > g.hi + 1e-12)
            throw DomainViolation("energy outside approximant domain");
        const double v = g.g(e);
        acc += spec.weights[j] * v * v;
    }
    const double q = acc / (c_ * c_);
    if (q < -1e-12 || q > 1.0 + 1e-9)
        throw OracleFailure("acceptance probability outside [0,1]");
    return std::min(1.0, std::max(0.0, q));
}

bool AcceptanceOracle::sample_outcome(const SpectralMeasure& spec,
                                      const OracleFunction& g) {
    const double q = accept_prob(spec, g);
    counters_.add(g.cost);
    return rng_.bernoulli(q);
}

bool AcceptanceOracle::sample_with_prob(double q, const QueryCost& cost) {
    counters_.add(cost);
    return rng_.bernoulli(q);
}

WindowLaw::WindowLaw(const SpectralMeasure& spec, const ShiftFamily& family,
                     double c, double wlo, double whi)
    : spec_(spec), family_(family), inv_c2_(1.0 / (c * c)), wlo_(wlo), whi_(whi) {
    if (!(wlo < whi)) throw InvalidParameters("WindowLaw: empty window");
    // The law is smooth in the shift, so a few hundred Chebyshev nodes resolve
    // it to rounding noise; validation below guards the claim.
    const int nodes = 512;
    auto direct_fn = [this](double x) { return direct(x); };
    table_ = cheb_interpolate(direct_fn, nodes, wlo, whi);
    double maxc = 0.0;
    for (double cf : table_.coeffs) maxc = std::max(maxc, std::abs(cf));
    // the naive DCT leaves a rounding plateau near 1e-13 * maxc; cutting just
    // above it keeps only signal coefficients (validated below)
    table_.truncate_tail(3e-13 * maxc);
    double worst = 0.0;
    double scale = 1e-300;
    for (int i = 0; i < 97; ++i) {
        // low-discrepancy probe points, deterministic
        const double t = std::fmod(0.6180339887498949 * (i + 1), 1.0);
        const double x = wlo + (whi - wlo) * t;
        const double d = direct(x);
        worst = std::max(worst, std::abs(table_.eval(x) - d));
        scale = std::max(scale, d);
    }
    tabulated_ = worst <= std::max(1e-15, 1e-11 * scale);
}

double WindowLaw::direct(double x) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < spec_.energies.size(); ++j) {
        const double y = spec_.energies[j] - x;
        if (y < family_.core_lo - 1e-12 || y > family_.core_hi + 1e-12)
            throw DomainViolation("shifted energy outside approximant domain");
        const double v = family_.core(y);
        acc += spec_.weights[j] * v * v;
    }
    return std::min(1.0, std::max(0.0, acc * inv_c2_));
}

double WindowLaw::q(double x) const {
    if (!tabulated_) return direct(x);
    return std::min(1.0, std::max(0.0, table_.eval(x)));
}

} // namespace gseelab
