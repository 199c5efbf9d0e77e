#include "genpow/calculus.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace genpow {

namespace {

double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

double factorial(std::size_t n) {
    double r = 1.0;
    for (std::size_t i = 2; i <= n; ++i) r *= double(i);
    return r;
}

// phd[m] = m-th derivative of Phi (phd[0] = values)
std::vector<cvec> phi_derivative_arrays(const SampledFunction& phi, std::size_t mmax) {
    if (phi.derivatives.size() < mmax) throw InsufficientOrder(mmax, phi.derivatives.size());
    std::vector<cvec> phd;
    phd.push_back(phi.values);
    for (std::size_t m = 1; m <= mmax; ++m) phd.push_back(phi.derivatives[m - 1]);
    return phd;
}

cplx det_complex(std::vector<cvec>& a) {
    const std::size_t n = a.size();
    cplx det{1.0, 0.0};
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) == 0.0) return cplx{0.0, 0.0};
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

void require_real_phi(const SampledFunction& phi) {
    if (!phi.is_real()) throw RealPhiRequired("operation requires a real-valued Phi");
}

void require_positive_phi(const SampledFunction& phi) {
    require_real_phi(phi);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        if (!(phi.values[i].real() > 0.0))
            throw PositivePhiRequired("Phi must be positive, node " + std::to_string(i));
}

}  // namespace

std::vector<cvec> reciprocal_derivatives(const SampledFunction& phi, std::size_t mmax) {
    std::vector<cvec> phd = phi_derivative_arrays(phi, mmax);
    const std::size_t sz = phi.values.size();
    std::vector<cvec> r;
    r.emplace_back(sz);
    for (std::size_t i = 0; i < sz; ++i) r[0][i] = 1.0 / phd[0][i];
    for (std::size_t m = 1; m <= mmax; ++m) {
        cvec next(sz, cplx{0.0, 0.0});
        for (std::size_t j = 1; j <= m; ++j) {
            const double c = binom(m, j);
            for (std::size_t i = 0; i < sz; ++i) next[i] += c * phd[j][i] * r[m - j][i];
        }
        for (std::size_t i = 0; i < sz; ++i) next[i] = -next[i] / phd[0][i];
        r.push_back(std::move(next));
    }
    return r;
}

std::vector<cvec> row_derivatives(const PowerTable& table, std::size_t n, bool tilde_family,
                                  std::size_t mmax) {
    if (n > table.order) throw InsufficientOrder(n, table.order);
    const std::size_t sz = table.grid().size();
    const std::size_t phi_need = mmax > 0 ? mmax - 1 : 0;
    std::vector<cvec> phd = phi_derivative_arrays(table.phi, phi_need);
    std::vector<cvec> iphd = reciprocal_derivatives(table.phi, phi_need);

    // recursion: row_n' = n * weight_n * row_{n-1}; weight_n = Phi for even-n X
    // rows and odd-n Xt rows, 1/Phi otherwise
    std::function<std::vector<cvec>(std::size_t, std::size_t)> rd =
        [&](std::size_t nn, std::size_t mm) -> std::vector<cvec> {
        std::vector<cvec> rows;
        rows.push_back(tilde_family ? table.Xt[nn] : table.X[nn]);
        if (mm == 0) return rows;
        if (nn == 0) {
            for (std::size_t m = 1; m <= mm; ++m) rows.emplace_back(sz, cplx{0.0, 0.0});
            return rows;
        }
        const bool use_phi = tilde_family ? (nn % 2 == 1) : (nn % 2 == 0);
        const std::vector<cvec>& wd = use_phi ? phd : iphd;
        std::vector<cvec> sub = rd(nn - 1, mm - 1);
        for (std::size_t m = 1; m <= mm; ++m) {
            cvec d(sz, cplx{0.0, 0.0});
            for (std::size_t j = 0; j < m; ++j) {
                const double c = binom(m - 1, j);
                for (std::size_t i = 0; i < sz; ++i) d[i] += c * wd[j][i] * sub[m - 1 - j][i];
            }
            for (std::size_t i = 0; i < sz; ++i) d[i] *= double(nn);
            rows.push_back(std::move(d));
        }
        return rows;
    };
    return rd(n, mmax);
}

cvec apply_phi_derivative_chain(const std::vector<cvec>& fder, const PowerTable& table,
                                std::size_t k, bool outer_tilde) {
    if (fder.size() < k + 1) throw InsufficientOrder(k, fder.size() ? fder.size() - 1 : 0);
    const std::size_t sz = table.grid().size();
    const std::size_t phi_need = k > 0 ? k - 1 : 0;
    std::vector<cvec> phd = phi_derivative_arrays(table.phi, phi_need);
    std::vector<cvec> iphd = reciprocal_derivatives(table.phi, phi_need);

    std::vector<cvec> cur(fder.begin(), fder.begin() + std::ptrdiff_t(k + 1));
    for (std::size_t s = 0; s < k; ++s) {
        // op at step s (innermost first): for D^(k) the op is D iff (k-s) is odd;
        // for Dt^(k) iff (k-s) is even
        const bool op_is_D = outer_tilde ? ((k - s) % 2 == 0) : ((k - s) % 2 == 1);
        const std::vector<cvec>& wd = op_is_D ? phd : iphd;
        const std::size_t need = k - s - 1;  // derivative orders of the new function
        std::vector<cvec> gp(cur.begin() + 1, cur.end());
        std::vector<cvec> next;
        for (std::size_t m = 0; m <= need; ++m) {
            cvec v(sz, cplx{0.0, 0.0});
            for (std::size_t j = 0; j <= m; ++j) {
                const double c = binom(m, j);
                for (std::size_t i = 0; i < sz; ++i) v[i] += c * wd[j][i] * gp[m - j][i];
            }
            next.push_back(std::move(v));
        }
        cur = std::move(next);
    }
    return cur[0];
}

cvec phi_derivative_power(const PowerTable& table, std::size_t k, std::size_t n,
                          PowerDerivativeVariant variant) {
    const bool same_parity = (k % 2 == n % 2);
    bool tilde_row = false, tilde_chain = false;
    switch (variant) {
        case PowerDerivativeVariant::D_on_X:
            if (!same_parity || n < k)
                throw ParityMismatch("D^(k)X^(n) needs same parity with n >= k");
            break;
        case PowerDerivativeVariant::Dt_on_Xt:
            if (!same_parity || n < k)
                throw ParityMismatch("Dt^(k)Xt^(n) needs same parity with n >= k");
            tilde_row = tilde_chain = true;
            break;
        case PowerDerivativeVariant::Dt_on_X:
            if (same_parity || n <= k)
                throw ParityMismatch("Dt^(k)X^(n) needs opposite parity with n > k");
            tilde_chain = true;
            break;
        case PowerDerivativeVariant::D_on_Xt:
            if (same_parity || n <= k)
                throw ParityMismatch("D^(k)Xt^(n) needs opposite parity with n > k");
            tilde_row = true;
            break;
    }
    std::vector<cvec> fder = row_derivatives(table, n, tilde_row, k);
    return apply_phi_derivative_chain(fder, table, k, tilde_chain);
}

TaylorExpansion taylor_expand(const SampledFunction& f, const PowerTable& table, std::size_t n) {
    require_real_phi(table.phi);
    if (!f.grid.same_as(table.grid())) throw GridMismatch("f and table grids differ");
    if (f.derivatives.size() < n + 1) throw InsufficientOrder(n + 1, f.derivatives.size());
    if (table.order < n) throw InsufficientOrder(n, table.order);

    const Grid& grid = table.grid();
    const std::size_t m = grid.size();
    const std::size_t i0 = table.x0_index;

    std::vector<cvec> fder;
    fder.push_back(f.values);
    for (std::size_t j = 0; j < n + 1; ++j) fder.push_back(f.derivatives[j]);

    TaylorExpansion out;
    out.base_index = i0;
    out.order = n;
    out.coefficients.resize(n + 1);
    out.partial_sum.assign(m, cplx{0.0, 0.0});
    for (std::size_t k = 0; k <= n; ++k) {
        cvec dk = apply_phi_derivative_chain(fder, table, k, /*outer_tilde=*/k % 2 == 1);
        out.coefficients[k] = dk[i0] / factorial(k);
        const cvec& yk = table.y_row(k);
        for (std::size_t i = 0; i < m; ++i) out.partial_sum[i] += out.coefficients[k] * yk[i];
    }

    // remainder: R_n(x) = (1/n!) int_{x0}^x Phi^{(-1)^n}(xi) Y_n(xi,x) D_{n+1}f(xi) dxi
    // with Y_n(xi,x) read through the symmetry relations as a row rebased at x.
    cvec dn1 = apply_phi_derivative_chain(fder, table, n + 1, /*outer_tilde=*/(n + 1) % 2 == 1);
    cvec w(m);
    for (std::size_t i = 0; i < m; ++i)
        w[i] = (n % 2 == 0) ? table.phi.values[i] : 1.0 / table.phi.values[i];

    out.remainder.assign(m, cplx{0.0, 0.0});
    const double sign = (n % 2 == 1) ? -1.0 : 1.0;
    cvec integrand(m);
    for (std::size_t j = 0; j < m; ++j) {
        PowerTable rb = rebase_table(table, j, n);
        const cvec& row = rb.Xt[n];  // Y_n(xi, x_j) = +/- Xt^(n)(x_j, xi)
        for (std::size_t i = 0; i < m; ++i) integrand[i] = sign * w[i] * row[i] * dn1[i];
        out.remainder[j] = cumulative_integral(grid, integrand, i0)[j] / factorial(n);
    }
    return out;
}

double wronskian_alpha(std::size_t n) {
    double a = 1.0;
    for (std::size_t k = 0; k <= n; ++k) a *= factorial(k);
    return a;
}

std::pair<double, double> wronskian_closed_form(const PowerTable& table, std::size_t n,
                                                std::size_t node) {
    require_positive_phi(table.phi);
    const double alpha = wronskian_alpha(n);
    const double sq = std::sqrt(table.phi.values[node].real());
    const double e = double(n % 2 == 1 ? n + 1 : n);
    return {alpha * std::pow(sq, e), alpha * std::pow(1.0 / sq, e)};
}

cplx wronskian_numeric(const PowerTable& table, std::size_t n, std::size_t node, bool tilde) {
    if (n > 4) throw OrderCapExceeded("numerical Wronskian capped at n = 4");
    if (table.order < n) throw InsufficientOrder(n, table.order);
    std::vector<cvec> mat(n + 1, cvec(n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
        const bool fam_tilde = tilde ? (k % 2 == 0) : (k % 2 == 1);
        std::vector<cvec> ders = row_derivatives(table, k, fam_tilde, n);
        for (std::size_t mm = 0; mm <= n; ++mm) mat[mm][k] = ders[mm][node];
    }
    return det_complex(mat);
}

double fundamental_set_residual(const PowerTable& table, std::size_t n) {
    if (n > 6) throw OrderCapExceeded("fundamental-set residual capped at n = 6");
    if (table.order < n) throw InsufficientOrder(n, table.order);
    const std::size_t m = table.grid().size();
    double resid = 0.0, scale = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        // D^(n+1) annihilates Y_0..Y_n for odd n and Yt_0..Yt_n for even n
        const bool fam_tilde = (n % 2 == 1) ? (k % 2 == 1) : (k % 2 == 0);
        std::vector<cvec> fder = row_derivatives(table, k, fam_tilde, n + 1);
        for (const cplx& v : fder[0]) scale = std::max(scale, std::abs(v));
        cvec applied = apply_phi_derivative_chain(fder, table, n + 1, /*outer_tilde=*/false);
        for (std::size_t i = 0; i < m; ++i) resid = std::max(resid, std::abs(applied[i]));
    }
    return resid / scale;
}

SampledFunction particular_solution(const PowerTable& table, const SampledFunction& h,
                                    std::size_t n, bool tilde) {
    if (n > 6) throw OrderCapExceeded("particular solution capped at n = 6");
    if (!h.grid.same_as(table.grid())) throw GridMismatch("h and table grids differ");
    const Grid& grid = table.grid();
    const std::size_t m = grid.size();
    const std::size_t i0 = table.x0_index;

    cvec weight(m);
    for (std::size_t i = 0; i < m; ++i)
        weight[i] = tilde ? h.values[i] * table.phi.values[i]
                          : h.values[i] / table.phi.values[i];

    cvec yp(m, cplx{0.0, 0.0});
    const double sign = (n % 2 == 1) ? -1.0 : 1.0;
    cvec integrand(m);
    for (std::size_t j = 0; j < m; ++j) {
        PowerTable rb = rebase_table(table, j, n);
        // untilde equation needs Xt^(n)(xi, x_j); tilde needs X^(n)(xi, x_j).
        // Swapping the arguments changes family for even n and negates the
        // same-family row for odd n.
        const cvec& row = ((n % 2 == 1) != tilde) ? rb.Xt[n] : rb.X[n];
        for (std::size_t i = 0; i < m; ++i) integrand[i] = sign * row[i] * weight[i];
        yp[j] = cumulative_integral(grid, integrand, i0)[j] / factorial(n);
    }
    return SampledFunction(grid, std::move(yp));
}

namespace {

// coefficients of the monic n-th order operator annihilating the n members
// (per node): c[k] = (-1)^{n+k} minor_k / minor_n for k < n, c[n] = 1
std::vector<cvec> minor_coefficients(const PowerTable& table, std::size_t n, bool tilde_set) {
    const std::size_t m = table.grid().size();
    std::vector<std::vector<cvec>> members;  // [kk][order] arrays
    for (std::size_t kk = 0; kk < n; ++kk) {
        const bool fam_tilde = tilde_set ? (kk % 2 == 0) : (kk % 2 == 1);
        members.push_back(row_derivatives(table, kk, fam_tilde, n));
    }
    std::vector<cvec> coef(n + 1, cvec(m));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<cplx> minors(n + 1);
        double max_minor = 0.0;
        for (std::size_t skip = 0; skip <= n; ++skip) {
            std::vector<cvec> sub;
            for (std::size_t mm = 0; mm <= n; ++mm) {
                if (mm == skip) continue;
                cvec rowv(n);
                for (std::size_t kk = 0; kk < n; ++kk) rowv[kk] = members[kk][mm][i];
                sub.push_back(std::move(rowv));
            }
            minors[skip] = det_complex(sub);
            max_minor = std::max(max_minor, std::abs(minors[skip]));
        }
        if (std::abs(minors[n]) == 0.0 || max_minor / std::abs(minors[n]) > 1e10)
            throw ConditioningFailure("Wronskian minor ratio ill-conditioned at node " +
                                      std::to_string(i));
        for (std::size_t k = 0; k < n; ++k) {
            const double s = ((n + k) % 2 == 0) ? 1.0 : -1.0;
            coef[k][i] = s * minors[k] / minors[n];
        }
        coef[n][i] = cplx{1.0, 0.0};
    }
    return coef;
}

}  // namespace

DerivativeExpansion derivative_expansion_coefficients(const PowerTable& table, std::size_t n) {
    if (n != 2 && n != 3) throw OrderCapExceeded("coefficient expansion implemented for n in {2,3}");
    require_positive_phi(table.phi);
    const std::size_t m = table.grid().size();

    DerivativeExpansion out;
    out.n = n;
    if (n % 2 == 0) {
        // D^(n) = L_n over the Y set; Dt^(n) = Lt_n over the Yt set
        out.a = minor_coefficients(table, n, /*tilde_set=*/false);
        out.at = minor_coefficients(table, n, /*tilde_set=*/true);
    } else {
        // D^(n) = Phi * Lt_n; Dt^(n) = (1/Phi) * L_n
        out.a = minor_coefficients(table, n, /*tilde_set=*/true);
        out.at = minor_coefficients(table, n, /*tilde_set=*/false);
        for (std::size_t k = 0; k <= n; ++k)
            for (std::size_t i = 0; i < m; ++i) {
                out.a[k][i] *= table.phi.values[i];
                out.at[k][i] /= table.phi.values[i];
            }
    }
    return out;
}

}  // namespace genpow
