#include "genpow/volterra.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace genpow {

namespace {

double factorial(std::size_t n) {
    double r = 1.0;
    for (std::size_t i = 2; i <= n; ++i) r *= double(i);
    return r;
}

// Prefix-integral weight matrix: G[l] = h * sum_xi P[l][xi] f[xi], where G is
// the cumulative integral from node 0 under the library quadrature scheme.
std::vector<std::vector<double>> prefix_weights(const Grid& grid) {
    const std::size_t m = grid.size();
    std::vector<std::vector<double>> P(m, std::vector<double>(m, 0.0));
    // mirror of the kW6 rows in the quadrature implementation
    static const double W[5][6] = {
        {475, 1427, -798, 482, -173, 27},
        {-27, 637, 1022, -258, 77, -11},
        {11, -93, 802, 802, -93, 11},
        {-11, 77, -258, 1022, 637, -27},
        {27, -173, 482, -798, 1427, 475},
    };
    for (std::size_t l = 1; l < m; ++l) {
        P[l] = P[l - 1];
        const std::size_t j = l - 1;
        std::size_t s = j >= 2 ? j - 2 : 0;
        if (s > m - 6) s = m - 6;
        for (std::size_t k = 0; k < 6; ++k) P[l][s + k] += W[j - s][k] / 1440.0;
    }
    return P;
}

}  // namespace

Kernel::Kernel(Grid g, std::vector<cvec> v, bool ord)
    : grid(std::move(g)), values(std::move(v)), ordered(ord) {
    if (values.size() != grid.size()) throw GridMismatch("kernel row count mismatch");
    for (const cvec& r : values)
        if (r.size() != grid.size()) throw GridMismatch("kernel column count mismatch");
}

Kernel kernel_one(const Grid& grid) {
    return Kernel(grid, std::vector<cvec>(grid.size(), cvec(grid.size(), cplx{1.0, 0.0})));
}

Kernel kernel_sigma(const SampledFunction& phi) {
    const std::size_t m = phi.grid.size();
    std::vector<cvec> v(m, cvec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) v[i][j] = phi.values[j] / phi.values[i];
    return Kernel(phi.grid, std::move(v));
}

Kernel two_argument_power(const SampledFunction& phi, std::size_t n, bool tilde) {
    const std::size_t m = phi.grid.size();
    std::vector<cvec> v(m);
    for (std::size_t i = 0; i < m; ++i) {
        PowerTable t = build_power_table(phi, i, n);
        v[i] = tilde ? t.Xt[n] : t.X[n];
    }
    return Kernel(phi.grid, std::move(v));
}

Kernel scale_second_argument(const Kernel& k, const cvec& factor) {
    if (factor.size() != k.size()) throw GridMismatch("factor length mismatch");
    std::vector<cvec> v = k.values;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) v[i][j] *= factor[j];
    return Kernel(k.grid, std::move(v), k.ordered);
}

Kernel compose(const Kernel& f, const Kernel& g) {
    if (!f.grid.same_as(g.grid)) throw GridMismatch("kernels live on different grids");
    const std::size_t m = f.size();
    const double h = f.grid.spacing();
    const std::vector<std::vector<double>> P = prefix_weights(f.grid);

    // (f*g)[i][j] = h * sum_xi (P[j][xi] - P[i][xi]) f[i][xi] g[xi][j],
    // split into two matrix products
    std::vector<cvec> H(m, cvec(m));  // H[xi][j] = P[j][xi] g[xi][j]
    for (std::size_t xi = 0; xi < m; ++xi)
        for (std::size_t j = 0; j < m; ++j) H[xi][j] = P[j][xi] * g.values[xi][j];

    std::vector<cvec> out(m, cvec(m, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t xi = 0; xi < m; ++xi) {
            const cplx fi = f.values[i][xi];
            if (fi == cplx{0.0, 0.0}) continue;
            const cplx* hr = H[xi].data();
            cplx* orow = out[i].data();
            for (std::size_t j = 0; j < m; ++j) orow[j] += fi * hr[j];
        }
        // subtract the lower limit contribution: sum_xi P[i][xi] f[i][xi] g[xi][j]
        cvec w(m);
        for (std::size_t xi = 0; xi < m; ++xi) w[xi] = P[i][xi] * f.values[i][xi];
        for (std::size_t xi = 0; xi < m; ++xi) {
            if (w[xi] == cplx{0.0, 0.0}) continue;
            const cplx* gr = g.values[xi].data();
            cplx* orow = out[i].data();
            for (std::size_t j = 0; j < m; ++j) orow[j] -= w[xi] * gr[j];
        }
        for (std::size_t j = 0; j < m; ++j) out[i][j] *= h;
    }
    const bool ord = f.ordered && g.ordered;
    if (ord)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < i; ++j) out[i][j] = cplx{0.0, 0.0};
    return Kernel(f.grid, std::move(out), ord);
}

Kernel kernel_power(const Kernel& f, std::size_t n) {
    if (n == 0)
        throw IdentityNotMaterializable("f^<0> is the Dirac delta of composition");
    Kernel acc = f;
    for (std::size_t k = 1; k < n; ++k) acc = compose(acc, f);
    return acc;
}

double Proposition51Report::max() const {
    return std::max(std::max(a_residual, b_residual),
                    std::max(a_tilde_residual, b_tilde_residual));
}

Proposition51Report proposition51_check(const SampledFunction& phi, std::size_t n,
                                        std::size_t m) {
    if (n < 1 || m < 1) throw ConfigError("proposition indices must be >= 1");
    const std::size_t top = 2 * n + 2 * m;
    const std::size_t M = phi.grid.size();

    // all two-argument rows up to order `top`, both families, in one sweep
    std::vector<std::vector<cvec>> XA(top + 1, std::vector<cvec>(M));
    std::vector<std::vector<cvec>> XtA(top + 1, std::vector<cvec>(M));
    for (std::size_t i = 0; i < M; ++i) {
        PowerTable t = build_power_table(phi, i, top);
        for (std::size_t k = 0; k <= top; ++k) {
            XA[k][i] = t.X[k];
            XtA[k][i] = t.Xt[k];
        }
    }
    auto as_kernel = [&](const std::vector<cvec>& rows) { return Kernel(phi.grid, rows); };
    cvec phiv = phi.values, iphiv(M);
    for (std::size_t i = 0; i < M; ++i) iphiv[i] = 1.0 / phiv[i];

    const double A = factorial(2 * n - 1) * factorial(2 * m) / factorial(top);
    const double B = factorial(2 * n - 1) * factorial(2 * m - 1) / factorial(top - 1);

    auto rel_residual = [&](const Kernel& lhs, const std::vector<cvec>& rhs_rows, double coef) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) {
                const cplx rhs = coef * rhs_rows[i][j];
                num = std::max(num, std::abs(lhs.values[i][j] - rhs));
                den = std::max(den, std::abs(rhs));
            }
        return num / den;
    };

    Kernel left = scale_second_argument(as_kernel(XA[2 * n - 1]), phiv);
    Kernel left_t = scale_second_argument(as_kernel(XtA[2 * n - 1]), iphiv);

    Proposition51Report rep{};
    rep.a_residual = rel_residual(compose(left, as_kernel(XA[2 * m])), XA[top], A);
    rep.b_residual = rel_residual(compose(left, as_kernel(XA[2 * m - 1])), XA[top - 1], B);
    rep.a_tilde_residual = rel_residual(compose(left_t, as_kernel(XtA[2 * m])), XtA[top], A);
    rep.b_tilde_residual =
        rel_residual(compose(left_t, as_kernel(XtA[2 * m - 1])), XtA[top - 1], B);
    return rep;
}

namespace {

// one row-propagation step: next(j) = int_{x0}^{x_j} row(xi) K(xi, x_j) dxi
cvec propagate_row(const Grid& grid, const cvec& row, const std::vector<cvec>& K,
                   std::size_t i0) {
    const std::size_t m = grid.size();
    cvec out(m), integrand(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t xi = 0; xi < m; ++xi) integrand[xi] = row[xi] * K[xi][j];
        out[j] = cumulative_integral(grid, integrand, i0)[j];
    }
    return out;
}

}  // namespace

ResolventSolution resolvent_solution(const SampledFunction& psi0, cplx lambda,
                                     std::size_t x0_index, double series_tol) {
    require_nonvanishing(psi0, "psi0");
    const Grid& grid = psi0.grid;
    const std::size_t m = grid.size();
    if (x0_index >= m) throw GridError("x0_index out of range");

    cvec phiv(m), iphiv(m);
    for (std::size_t i = 0; i < m; ++i) {
        phiv[i] = psi0.values[i] * psi0.values[i];
        iphiv[i] = 1.0 / phiv[i];
    }
    const cvec P = cumulative_integral(grid, iphiv, 0);
    const cvec Q = cumulative_integral(grid, phiv, 0);

    std::vector<cvec> rho(m, cvec(m)), rhot(m, cvec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            rho[i][j] = phiv[j] * (P[j] - P[i]);
            rhot[i][j] = (Q[j] - Q[i]) * iphiv[j];
        }

    constexpr std::size_t kMaxTerms = 60;
    ResolventSolution sol;
    sol.lambda = lambda;
    sol.x0_index = x0_index;
    sol.neumann_terms = 0;
    sol.tail_estimate = 0.0;
    sol.u1_part.assign(m, cplx{1.0, 0.0});
    sol.u2_part.assign(m, cplx{0.0, 0.0});

    auto sup = [](const cvec& v) {
        double s = 0.0;
        for (const cplx& x : v) s = std::max(s, std::abs(x));
        return s;
    };

    // u1: 1 + sum_k lambda^k (rhot^<k> * 1)(x0, .)
    {
        cvec row = rhot[x0_index];
        cplx lam_k = lambda;
        double prev = 1e300;
        std::size_t grew = 0;
        for (std::size_t k = 1; k <= kMaxTerms; ++k) {
            if (k > 1) {
                row = propagate_row(grid, row, rhot, x0_index);
                lam_k *= lambda;
            }
            cvec term = cumulative_integral(grid, row, x0_index);
            double tsup = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                term[i] *= lam_k;
                tsup = std::max(tsup, std::abs(term[i]));
                sol.u1_part[i] += term[i];
            }
            sol.neumann_terms = std::max(sol.neumann_terms, k);
            sol.tail_estimate = tsup;
            if (tsup <= series_tol) break;
            grew = tsup > prev ? grew + 1 : 0;
            if (grew > 3) throw DivergenceSuspected("Neumann terms growing in u1 series");
            prev = tsup;
        }
        for (std::size_t i = 0; i < m; ++i) sol.u1_part[i] *= psi0.values[i];
    }

    // u2: sum_{k>=0} lambda^k rho^<k+1>(x0, .)
    {
        cvec row = rho[x0_index];
        cplx lam_k{1.0, 0.0};
        double prev = 1e300;
        std::size_t grew = 0;
        for (std::size_t k = 0; k <= kMaxTerms; ++k) {
            if (k > 0) {
                row = propagate_row(grid, row, rho, x0_index);
                lam_k *= lambda;
            }
            double tsup = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const cplx t = lam_k * row[i];
                tsup = std::max(tsup, std::abs(t));
                sol.u2_part[i] += t;
            }
            sol.neumann_terms = std::max(sol.neumann_terms, k + 1);
            sol.tail_estimate = std::max(sol.tail_estimate, tsup);
            if (tsup <= series_tol * std::max(1.0, sup(sol.u2_part))) break;
            grew = tsup > prev ? grew + 1 : 0;
            if (grew > 3) throw DivergenceSuspected("Neumann terms growing in u2 series");
            prev = tsup;
        }
        for (std::size_t i = 0; i < m; ++i) sol.u2_part[i] /= psi0.values[i];
    }
    return sol;
}

ResolventSolution partner_resolvent(const SampledFunction& psi0, cplx lambda,
                                    std::size_t x0_index, double series_tol) {
    require_nonvanishing(psi0, "psi0");
    const std::size_t m = psi0.grid.size();
    cvec inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = 1.0 / psi0.values[i];
    return resolvent_solution(SampledFunction(psi0.grid, std::move(inv)), lambda, x0_index,
                              series_tol);
}

}  // namespace genpow
