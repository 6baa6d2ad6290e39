#include "gseelab/chebyshev.hpp"

#include <cmath>

#include "gseelab/errors.hpp"

namespace gseelab {

double ChebSeries::eval(double x) const {
    if (coeffs.empty()) return 0.0;
    const double u = (2.0 * x - (lo + hi)) / (hi - lo);
    double b1 = 0.0;
    double b2 = 0.0;
    const double two_u = 2.0 * u;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        const double b0 = coeffs[k] + two_u * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs[0] + u * b1 - b2;
}

void ChebSeries::truncate_tail(double tol) {
    std::size_t keep = coeffs.size();
    while (keep > 1 && std::abs(coeffs[keep - 1]) < tol) --keep;
    coeffs.resize(keep);
}

ChebSeries cheb_interpolate(const std::function<double(double)>& f, int n,
                            double lo, double hi) {
    if (n < 0 || !(lo < hi)) throw InvalidParameters("cheb_interpolate: bad arguments");
    ChebSeries s;
    s.lo = lo;
    s.hi = hi;
    const int m = n + 1;
    std::vector<double> fv(m);
    for (int k = 0; k < m; ++k) {
        const double u = n == 0 ? 1.0 : std::cos(M_PI * k / n);
        const double x = 0.5 * ((hi - lo) * u + (hi + lo));
        fv[k] = f(x);
    }
    if (n == 0) {
        s.coeffs = {fv[0]};
        return s;
    }
    s.coeffs.assign(m, 0.0);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.5 * (fv[0] + (j % 2 == 0 ? fv[n] : -fv[n]));
        for (int k = 1; k < n; ++k) acc += fv[k] * std::cos(M_PI * j * k / n);
        s.coeffs[j] = 2.0 * acc / n;
    }
    s.coeffs[0] *= 0.5;
    s.coeffs[n] *= 0.5;
    return s;
}

} // namespace gseelab
