#ifndef GENPOW_TESTS_SUPPORT_HPP
#define GENPOW_TESTS_SUPPORT_HPP

#include "genpow/grid.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace testsupport {

// Independent spectral oracle: lowest Dirichlet eigenvalues of -y'' + q y = lambda y
// on [a,b] via the standard 3-point discretization and Sturm-sequence bisection.
// Deliberately shares no code with the library under test.
inline std::vector<double> fd_dirichlet_eigenvalues(const std::function<double(double)>& q,
                                                    double a, double b, std::size_t m,
                                                    std::size_t count) {
    const double h = (b - a) / double(m - 1);
    const std::size_t n = m - 2;  // interior nodes
    std::vector<double> d(n);
    const double off = -1.0 / (h * h);
    for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 / (h * h) + q(a + h * double(i + 1));

    // number of eigenvalues of the tridiagonal matrix strictly below x
    auto count_below = [&](double x) {
        std::size_t cnt = 0;
        // LDL^T pivot recurrence on the shifted matrix; count negative pivots
        double piv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            piv = (d[i] - x) - (i ? off * off / piv : 0.0);
            if (piv < 0.0) ++cnt;
            if (piv == 0.0) piv = 1e-300;
        }
        return cnt;
    };

    // Gershgorin bounds
    double lo = d[0], hi = d[0];
    for (double v : d) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    lo -= 2.0 * std::abs(off);
    hi += 2.0 * std::abs(off);

    std::vector<double> eigs;
    for (std::size_t k = 0; k < count; ++k) {
        double l = lo, r = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (l + r);
            if (count_below(mid) >= k + 1)
                r = mid;
            else
                l = mid;
        }
        eigs.push_back(0.5 * (l + r));
    }
    return eigs;
}

inline double sup_abs(const genpow::cvec& v) {
    double s = 0.0;
    for (const genpow::cplx& x : v) s = std::max(s, std::abs(x));
    return s;
}

inline double sup_diff(const genpow::cvec& a, const genpow::cvec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

}  // namespace testsupport

#endif
