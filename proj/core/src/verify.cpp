#include "genpow/verify.hpp"
#include "genpow/calculus.hpp"
#include "genpow/errors.hpp"
#include "genpow/power_table.hpp"
#include "genpow/trig.hpp"
#include "genpow/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace genpow {

namespace {

double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

double sup_diff(const cvec& a, const cvec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

double sup(const cvec& a) {
    double s = 0.0;
    for (const cplx& v : a) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

std::vector<CheckResult> run_verification(const PhiSpec& phi_spec, const Grid& grid) {
    std::vector<CheckResult> out;
    const Tolerances& tol = tolerances();
    const std::size_t m = grid.size();
    SampledFunction phi = materialize_phi(phi_spec, grid);
    auto add = [&](const std::string& name, double resid, double tolerance) {
        out.push_back(CheckResult{name, resid, tolerance});
    };

    // quadrature linearity with random complex weights
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        cvec f(m), g(m);
        for (std::size_t i = 0; i < m; ++i) {
            f[i] = cplx{u(rng), u(rng)};
            g[i] = cplx{u(rng), u(rng)};
        }
        const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
        cvec fg(m);
        for (std::size_t i = 0; i < m; ++i) fg[i] = a * f[i] + b * g[i];
        cvec lhs = cumulative_integral(grid, fg, grid.x0_index());
        cvec rf = cumulative_integral(grid, f, grid.x0_index());
        cvec rg = cumulative_integral(grid, g, grid.x0_index());
        double r = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            r = std::max(r, std::abs(lhs[i] - (a * rf[i] + b * rg[i])));
        add("quadrature_linearity", r, 1e-13);
    }

    // direction consistency: F[j]-F[i] equals the direct i->j integral
    {
        cvec pf = cumulative_integral(grid, phi.values, grid.x0_index());
        double r = 0.0;
        for (std::size_t i = 0; i < m; i += m / 7 + 1)
            for (std::size_t j = 0; j < m; j += m / 5 + 1)
                r = std::max(r, std::abs((pf[j] - pf[i]) -
                                         range_integral(grid, phi.values, i, j)));
        add("quadrature_direction_consistency", r, 2.0 * tol.identity);
    }

    const std::size_t N = 12;
    PowerTable table = build_power_table(phi, grid.x0_index(), N);

    // structural invariants of the table
    {
        double r = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            r = std::max(r, std::max(std::abs(table.X[0][i] - 1.0),
                                     std::abs(table.Xt[0][i] - 1.0)));
        for (std::size_t n = 1; n <= N; ++n)
            r = std::max(r, std::max(std::abs(table.X[n][table.x0_index]),
                                     std::abs(table.Xt[n][table.x0_index])));
        add("power_table_structure", r, 1e-14);
    }
    {
        double r = 0.0;
        for (std::size_t j = 0; 2 * j <= N; ++j) {
            const double bound = std::pow(table.c_bound, double(j));
            for (std::size_t i = 0; i < m; ++i) {
                r = std::max(r, std::abs(table.X[2 * j][i]) - bound);
                if (2 * j + 1 <= N)
                    r = std::max(r, std::abs(table.X[2 * j + 1][i]) -
                                        grid.length() * table.max_inv_phi * bound);
            }
        }
        add("growth_bounds", std::max(r, 0.0), tol.identity);
    }

    // conjugation swaps the families
    {
        PowerTable conj = conjugate_table(table);
        double r = 0.0;
        for (std::size_t n = 0; n <= N; ++n) {
            r = std::max(r, sup_diff(conj.X[n], table.Xt[n]));
            r = std::max(r, sup_diff(conj.Xt[n], table.X[n]));
        }
        add("conjugate_table_swap", r, 1e-12 * std::max(1.0, sup(table.Xt[N])));
    }

    // Theorem 3.2 symmetry at 8 random bases
    {
        std::mt19937 rng(3);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        double even_r = 0.0, odd_r = 0.0;
        for (int t = 0; t < 8; ++t) {
            const std::size_t b = pick(rng);
            PowerTable rb = rebase_table(table, b, 8);
            for (std::size_t n = 1; n <= 8; ++n) {
                if (n % 2 == 0) {
                    even_r = std::max(even_r,
                                      std::abs(table.Xt[n][b] - rb.X[n][table.x0_index]));
                } else {
                    odd_r = std::max(odd_r,
                                     std::abs(table.X[n][b] + rb.X[n][table.x0_index]));
                    odd_r = std::max(odd_r,
                                     std::abs(table.Xt[n][b] + rb.Xt[n][table.x0_index]));
                }
            }
        }
        add("symmetry_even", even_r, tol.identity);
        add("antisymmetry_odd", odd_r, tol.identity);
    }

    // Theorem 3.4 binomial identity, even n, relative to the largest term
    for (std::size_t n = 2; n <= 8; n += 2) {
        cvec acc(m, cplx{0.0, 0.0});
        double scale = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double c = binom(n, k) * ((k % 2 == 0) ? 1.0 : -1.0);
            double term_sup = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const cplx t = table.X[k][i] * table.Xt[n - k][i];
                acc[i] += c * t;
                term_sup = std::max(term_sup, std::abs(t));
            }
            scale = std::max(scale, term_sup);
        }
        add("binomial_identity_n" + std::to_string(n), sup(acc) / scale, tol.identity);
    }

    // trig identities with certified truncation
    {
        PhiTrigSet trig = [&] {
            const double odd_factor = 1.0 + grid.length() * table.max_inv_phi;
            const std::size_t K = auto_truncation(table.c_bound, odd_factor, 1e-10);
            PowerTable big = (table.order >= 2 * K + 1)
                                 ? table
                                 : build_power_table(phi, grid.x0_index(), 2 * K + 1);
            return build_trig(big, 1e-10);
        }();
        double ell = 0.0, hyp = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            ell = std::max(ell, std::abs(trig.C[i] * trig.Ct[i] + trig.S[i] * trig.St[i] - 1.0));
            hyp = std::max(hyp,
                           std::abs(trig.Ch[i] * trig.Cht[i] - trig.Sh[i] * trig.Sht[i] - 1.0));
        }
        add("pythagorean_elliptic", ell, 1e-10 + tol.identity);
        add("pythagorean_hyperbolic", hyp, 1e-10 + tol.identity);
    }

    // Proposition 3.9, all four variants (when Phi carries enough derivatives)
    if (phi.derivatives.size() >= 6) {
        double r = 0.0;
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t k = 1; k <= std::min<std::size_t>(n, 6); ++k) {
                const bool same = (k % 2 == n % 2);
                auto check = [&](PowerDerivativeVariant v, const cvec& row) {
                    cvec lhs = phi_derivative_power(table, k, n, v);
                    double fac = 1.0;
                    for (std::size_t i = n - k + 1; i <= n; ++i) fac *= double(i);
                    double rr = 0.0, sc = 1.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        rr = std::max(rr, std::abs(lhs[i] - fac * row[i]));
                        sc = std::max(sc, std::abs(fac * row[i]));
                    }
                    r = std::max(r, rr / sc);
                };
                if (same) {
                    check(PowerDerivativeVariant::D_on_X, table.X[n - k]);
                    check(PowerDerivativeVariant::Dt_on_Xt, table.Xt[n - k]);
                } else if (n > k) {
                    check(PowerDerivativeVariant::Dt_on_X, table.X[n - k]);
                    check(PowerDerivativeVariant::D_on_Xt, table.Xt[n - k]);
                }
            }
        add("power_derivative_formulas", r, tol.identity);
    }

    // Wronskians and fundamental sets need real positive Phi
    const bool positive = [&] {
        if (!phi.is_real()) return false;
        for (const cplx& v : phi.values)
            if (!(v.real() > 0.0)) return false;
        return true;
    }();
    if (positive && phi.derivatives.size() >= 6) {
        std::mt19937 rng(11);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        double r = 0.0;
        for (int t = 0; t < 8; ++t) {
            const std::size_t node = pick(rng);
            for (std::size_t n = 1; n <= 4; ++n) {
                auto [wn, wtn] = wronskian_closed_form(table, n, node);
                const cplx num = wronskian_numeric(table, n, node, false);
                const cplx numt = wronskian_numeric(table, n, node, true);
                r = std::max(r, std::abs(num - wn) / std::abs(wn));
                r = std::max(r, std::abs(numt - wtn) / std::abs(wtn));
            }
        }
        add("wronskian_closed_vs_numeric", r, 1e-6);
        add("fundamental_set_n4", fundamental_set_residual(table, 4), tol.identity);
    }

    // kernel bridges (kept at modest grid sizes: these are O(M^3))
    if (m <= 513) {
        Kernel one = kernel_one(grid);
        Kernel sig = kernel_sigma(phi);
        Kernel c = compose(one, sig);
        double r = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            r = std::max(r, std::abs(c.values[grid.x0_index()][j] -
                                     phi.values[j] * table.X[1][j]));
        add("one_star_sigma_bridge", r / std::max(1.0, sup(table.X[1])), tol.identity);

        Proposition51Report p51 = proposition51_check(phi, 1, 1);
        add("proposition51_nm11", p51.max(), 1e-7);
    }

    return out;
}

}  // namespace genpow
