#include "gseelab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "gseelab/errors.hpp"

namespace gseelab {

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    if (samples.empty()) throw InvalidParameters("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_critical(double alpha, long n) {
    if (n <= 0 || !(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameters("ks_critical: bad arguments");
    // c(alpha) = sqrt(-ln(alpha/2)/2); 1.6276 at alpha = 0.01
    const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
    return c / std::sqrt(static_cast<double>(n));
}

double eb_radius(long n, double var_hat, double range, double delta) {
    if (n <= 0 || !(delta > 0.0 && delta < 1.0) || range < 0.0 || var_hat < 0.0)
        throw InvalidParameters("eb_radius: bad arguments");
    const double l = std::log(3.0 / delta);
    return std::sqrt(2.0 * var_hat * l / n) + 3.0 * range * l / n;
}

double MomentAccumulator::m2() const {
    const double mu = mean();
    return s2 / n - mu * mu;
}

double MomentAccumulator::m4() const {
    const double mu = mean();
    return (s4 - 4.0 * mu * s3 + 6.0 * mu * mu * s2 - 4.0 * mu * mu * mu * s1) / n +
           mu * mu * mu * mu;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidParameters("fit_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        f.sse += r * r;
    }
    return f;
}

LineFit fit_fixed_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double slope) {
    if (x.size() != y.size() || x.empty())
        throw InvalidParameters("fit_fixed_slope: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += y[i] - slope * x[i];
    LineFit f;
    f.slope = slope;
    f.intercept = acc / static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (slope * x[i] + f.intercept);
        f.sse += r * r;
    }
    return f;
}

} // namespace gseelab
