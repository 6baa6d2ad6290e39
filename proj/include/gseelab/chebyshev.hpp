#pragma once

#include <functional>
#include <vector>

namespace gseelab {

// Chebyshev series on a general interval, evaluated by the Clenshaw
// recurrence. Coefficients come from interpolation at Chebyshev-Lobatto
// nodes (DCT-I style sums; O(n^2), plenty for the degrees used here).

struct ChebSeries {
    double lo = -1.0;
    double hi = 1.0;
    std::vector<double> coeffs; // c_0 ... c_d for sum_k c_k T_k(u), u in [-1,1]

    int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }

    double eval(double x) const;

    // Drop trailing coefficients below tol (keeps at least one).
    void truncate_tail(double tol);
};

// Interpolate f at n+1 Chebyshev-Lobatto nodes of [lo,hi]; returns degree-n series.
ChebSeries cheb_interpolate(const std::function<double(double)>& f, int n,
                            double lo, double hi);

} // namespace gseelab
