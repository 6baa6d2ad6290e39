#include "gseelab/polyapprox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gseelab/errors.hpp"
#include <nlohmann/json.hpp>

namespace gseelab {

double erfinv(double y) {
    if (!(y > -1.0 && y < 1.0)) throw InvalidParameters("erfinv domain");
    // Winitzki seed, polished by Newton on erf.
    constexpr double a = 0.147;
    const double l = std::log(1.0 - y * y);
    const double t1 = 2.0 / (M_PI * a) + 0.5 * l;
    double x = std::copysign(std::sqrt(std::sqrt(t1 * t1 - l / a) - t1), y);
    for (int i = 0; i < 4; ++i) {
        const double err = std::erf(x) - y;
        x -= err * 0.5 * std::sqrt(M_PI) * std::exp(x * x);
    }
    return x;
}

namespace {

using Target = std::function<double(double)>;
using RegionCheck = std::function<bool(double, double)>;

struct Certification {
    double sup_err = 0.0;
    double sup_abs = 0.0;
    bool regions_ok = true;
};

Certification sweep(const ChebSeries& s, const Target& target,
                    const RegionCheck& ok, long points,
                    const std::vector<double>& extra) {
    Certification c;
    const double lo = s.lo, hi = s.hi;
    auto visit = [&](double x) {
        const double px = s.eval(x);
        c.sup_err = std::max(c.sup_err, std::abs(px - target(x)));
        c.sup_abs = std::max(c.sup_abs, std::abs(px));
        if (c.regions_ok && !ok(x, px)) c.regions_ok = false;
    };
    for (long i = 0; i < points; ++i)
        visit(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    for (double x : extra)
        if (x >= lo && x <= hi) visit(x);
    return c;
}

// Doubling search with a cheap pre-check, then a tail trim re-certified on the
// full grid (keeps recorded degrees close to minimal so depth fits are smooth).
// `interp` is what gets interpolated; `target` is what certified_error measures.
ChebSeries construct_certified(const Target& interp, const Target& target,
                               const RegionCheck& ok, double lo, double hi,
                               const ApproxOptions& opt,
                               const std::vector<double>& extra,
                               Certification& final_cert) {
    int d = 16;
    while (true) {
        ChebSeries s = cheb_interpolate(interp, d, lo, hi);
        const long coarse = std::max<long>(10L * d, 512);
        Certification pre = sweep(s, target, ok, coarse, extra);
        if (pre.regions_ok) {
            Certification full = sweep(s, target, ok, opt.grid_points, extra);
            if (full.regions_ok) {
                // Trim: drop the geometric tail while certification still holds.
                double maxc = 0.0;
                for (double c : s.coeffs) maxc = std::max(maxc, std::abs(c));
                ChebSeries t = s;
                t.truncate_tail(1e-14 * maxc);
                if (t.coeffs.size() < s.coeffs.size()) {
                    Certification tc = sweep(t, target, ok, opt.grid_points, extra);
                    if (tc.regions_ok) {
                        final_cert = tc;
                        return t;
                    }
                }
                final_cert = full;
                return s;
            }
        }
        if (d >= opt.max_degree)
            throw DegreeCapExceeded("could not certify within max degree " +
                                    std::to_string(opt.max_degree));
        d = std::min(2 * d, opt.max_degree);
    }
}

} // namespace

double BoundedPoly::eval(double x) const {
    if (x < series.lo - 1e-12 || x > series.hi + 1e-12)
        throw DomainViolation("eval outside approximant domain");
    return series.eval(x);
}

double CosineSeries::eval(double x) const {
    // cos(k theta) by the Chebyshev recurrence.
    const double theta = 2.0 * M_PI * x / T;
    const double c1 = std::cos(theta);
    double ckm1 = 1.0, ck = c1;
    double acc = coeffs[0];
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        if (j > 1) {
            const double next = 2.0 * c1 * ck - ckm1;
            ckm1 = ck;
            ck = next;
        }
        acc += coeffs[j] * ck;
    }
    return acc;
}

BoundedPoly threshold_poly(double a, double b, double eps1,
                           const ApproxOptions& opt) {
    if (!(-1.0 < a && a < b && b < 1.0)) throw InvalidParameters("need -1 < a < b < 1");
    if (!(eps1 > 0.0 && eps1 < 1.0)) throw InvalidParameters("eps1 out of (0,1)");
    const double m = 0.5 * (a + b);
    const double k = 2.0 * erfinv(1.0 - 0.5 * eps1) / (b - a);
    // Surrogate sits eps1/4 inside every band, leaving that much room for the
    // interpolation error.
    auto target = [=](double x) {
        return 0.5 * eps1 + (1.0 - eps1) * 0.5 * (1.0 + std::erf(k * (m - x)));
    };
    const double slack = opt.bound_slack;
    auto ok = [=](double x, double px) {
        if (std::abs(px) > 1.0 + slack) return false;
        if (x <= a && px < 1.0 - eps1 - slack) return false;
        if (x >= b && std::abs(px) > eps1 + slack) return false;
        return true;
    };
    Certification cert;
    BoundedPoly p;
    p.series = construct_certified(target, target, ok, -1.0, 1.0, opt, {a, b}, cert);
    p.degree = p.series.degree();
    p.certified_error = cert.sup_err;
    p.bound_ok = cert.sup_abs <= 1.0 + slack;
    return p;
}

namespace {

BoundedPoly gaussian_on(double sigma, double eps2, double center, double lo,
                        double hi, const ApproxOptions& opt) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidParameters("sigma out of (0,1)");
    if (!(eps2 > 0.0 && eps2 < 1.0)) throw InvalidParameters("eps2 out of (0,1)");
    auto gauss = [=](double x) {
        const double u = (x - center) / sigma;
        return std::exp(-0.5 * u * u);
    };
    // Interpolate the (1 - eps2/3)-scaled Gaussian (restores the <= 1 bound),
    // certify against the unscaled one.
    auto interp = [=](double x) { return (1.0 - eps2 / 3.0) * gauss(x); };
    const double slack = opt.bound_slack;
    auto ok = [=](double x, double px) {
        if (std::abs(px) > 1.0 + slack) return false;
        return std::abs(px - gauss(x)) <= eps2;
    };
    Certification cert;
    BoundedPoly p;
    p.series = construct_certified(interp, gauss, ok, lo, hi, opt, {center}, cert);
    p.degree = p.series.degree();
    p.certified_error = cert.sup_err;
    p.bound_ok = cert.sup_abs <= 1.0 + slack;
    return p;
}

} // namespace

BoundedPoly gaussian_poly(double sigma, double eps2, double xi,
                          const ApproxOptions& opt) {
    if (!(xi >= -2.0 && xi <= 2.0)) throw InvalidParameters("xi out of [-2,2]");
    return gaussian_on(sigma, eps2, xi, -1.0, 1.0, opt);
}

BoundedPoly gaussian_core_poly(double sigma, double eps2,
                               const ApproxOptions& opt) {
    return gaussian_on(sigma, eps2, 0.0, -M_PI, M_PI, opt);
}

CosineSeries gaussian_cosine_series(double sigma, double eps2, long grid_points) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidParameters("sigma out of (0,1)");
    if (!(eps2 > 0.0 && eps2 < 1.0)) throw InvalidParameters("eps2 out of (0,1)");
    // Back-solve the periodization error bound 2 e^{-t^2/8}/(1 - e^{-t^2}) = eps2/6
    // for t = T/sigma (monotone decreasing in t).
    auto h = [](double t) {
        return 2.0 * std::exp(-t * t / 8.0) / (1.0 - std::exp(-t * t));
    };
    double lo = 0.5, hi = 50.0;
    while (h(hi) > eps2 / 6.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > eps2 / 6.0 ? lo : hi) = mid;
    }
    const double tstar = hi;
    CosineSeries s;
    s.T = std::max(2.0 * M_PI, sigma * tstar);
    s.trunc_constant = tstar / std::sqrt(std::log(1.0 / eps2));
    const long N = static_cast<long>(
        std::ceil(s.T * std::sqrt(std::log(6.0 / eps2) / 2.0) / (M_PI * sigma)));
    s.N = static_cast<int>(std::max<long>(N, 0));
    auto ghat = [sigma](double f) {
        return std::sqrt(2.0 * M_PI) * sigma *
               std::exp(-2.0 * M_PI * M_PI * sigma * sigma * f * f);
    };
    const double factor = 1.0 - eps2 / 3.0;
    s.coeffs.resize(s.N + 1);
    s.coeffs[0] = factor * ghat(0.0) / s.T;
    for (int j = 1; j <= s.N; ++j)
        s.coeffs[j] = 2.0 * factor * ghat(static_cast<double>(j) / s.T) / s.T;
    double sum = 0.0;
    for (double c : s.coeffs) {
        if (!(c > 0.0)) throw LemmaViolation("cosine series coefficient not positive");
        sum += c;
    }
    if (sum > 1.0 + 1e-12) throw LemmaViolation("cosine series coefficients sum above 1");
    double sup = 0.0;
    for (long i = 0; i < grid_points; ++i) {
        const double x =
            -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        sup = std::max(sup, std::abs(s.eval(x) - std::exp(-x * x / (2.0 * sigma * sigma))));
    }
    s.certified_error = sup;
    if (sup > eps2)
        throw LemmaViolation("cosine series misses its sup-norm target");
    return s;
}

QueryCost degree_for_depth(const BoundedPoly& p, int base_ancillas) {
    QueryCost q;
    q.degree = p.degree;
    q.queries = 2L * p.degree;
    q.ancillas = base_ancillas + 2;
    return q;
}

QueryCost degree_for_depth(const CosineSeries& s) {
    QueryCost q;
    q.degree = 2 * s.N;
    q.queries = 2L * s.N;
    q.ancillas = 1;
    q.evolution_time = 2.0 * M_PI / s.T;
    return q;
}

std::string to_json(const BoundedPoly& p) {
    nlohmann::json j;
    j["basis"] = "chebyshev";
    j["lo"] = p.series.lo;
    j["hi"] = p.series.hi;
    j["coeffs"] = p.series.coeffs;
    j["degree"] = p.degree;
    j["certified_error"] = p.certified_error;
    j["bound_ok"] = p.bound_ok;
    return j.dump();
}

std::string to_json(const CosineSeries& s) {
    nlohmann::json j;
    j["basis"] = "cosine";
    j["T"] = s.T;
    j["coeffs"] = s.coeffs;
    j["N"] = s.N;
    j["certified_error"] = s.certified_error;
    j["trunc_constant"] = s.trunc_constant;
    return j.dump();
}

BoundedPoly poly_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("basis") != "chebyshev") throw InvalidParameters("not a chebyshev record");
    BoundedPoly p;
    p.series.lo = j.at("lo").get<double>();
    p.series.hi = j.at("hi").get<double>();
    p.series.coeffs = j.at("coeffs").get<std::vector<double>>();
    p.degree = j.at("degree").get<int>();
    p.certified_error = j.at("certified_error").get<double>();
    p.bound_ok = j.at("bound_ok").get<bool>();
    return p;
}

CosineSeries cosine_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("basis") != "cosine") throw InvalidParameters("not a cosine record");
    CosineSeries s;
    s.T = j.at("T").get<double>();
    s.coeffs = j.at("coeffs").get<std::vector<double>>();
    s.N = j.at("N").get<int>();
    s.certified_error = j.at("certified_error").get<double>();
    s.trunc_constant = j.at("trunc_constant").get<double>();
    return s;
}

} // namespace gseelab
