// Acceptance gate: twelve numbered criteria, each printing one pass/fail line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "genpow/calculus.hpp"
#include "genpow/errors.hpp"
#include "genpow/spps.hpp"
#include "genpow/susy.hpp"
#include "genpow/trig.hpp"
#include "genpow/volterra.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

using namespace genpow;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int num, const char* what, double residual, double tol, double secs, double budget,
            bool ok) {
    std::printf("[%s] criterion %02d: %s (residual=%.3e, tol=%.1e, time=%.2fs%s)\n",
                ok ? "PASS" : "FAIL", num, what, residual, tol, secs,
                budget > 0.0 ? (std::string(", budget=") + std::to_string(budget) + "s").c_str()
                             : "");
    std::fflush(stdout);
}

struct WeightCase {
    FuncSpec spec;
    double a, b;
};

std::vector<WeightCase> reference_weights() {
    return {
        {FuncSpec::shifted_square(), 0.0, 1.0},
        {FuncSpec::sqrt_cosh(), 0.0, 1.0},
        {FuncSpec::gaussian_ground(), -1.0, 1.0},
    };
}

}  // namespace

TEST_CASE("criterion 01: unit weight reduces to monomials") {
    Stopwatch sw;
    Grid g = Grid::uniform(0.0, 1.0, 513, 0);
    SampledFunction phi = materialize_phi(FuncSpec::make_constant(cplx{1.0, 0.0}), g);
    PowerTable t = build_power_table(phi, 0, 10);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 10; ++n)
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double mono = std::pow(g.node(i), double(n));
            worst = std::max(worst, std::abs(t.X[n][i] - mono));
            worst = std::max(worst, std::abs(t.Xt[n][i] - mono));
        }
    const double secs = sw.seconds();
    const bool ok = worst <= 1e-10 && secs < 1.0;
    report(1, "monomial reduction, M=513, n<=10", worst, 1e-10, secs, 1.0, ok);
    CHECK(worst <= 1e-10);
    CHECK(secs < 1.0);
}

TEST_CASE("criterion 02: two-argument symmetry at random bases") {
    Stopwatch sw;
    std::mt19937 rng(29);
    double worst = 0.0;
    for (const WeightCase& c : reference_weights()) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable t = build_power_table(phi, 0, 8);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int rep = 0; rep < 8; ++rep) {
            const std::size_t b = pick(rng);
            PowerTable rb = rebase_table(t, b, 8);
            for (std::size_t n = 1; n <= 8; ++n) {
                if (n % 2 == 0) {
                    worst = std::max(worst, std::abs(t.Xt[n][b] - rb.X[n][0]));
                    worst = std::max(worst, std::abs(t.X[n][b] - rb.Xt[n][0]));
                } else {
                    worst = std::max(worst, std::abs(t.X[n][b] + rb.X[n][0]));
                    worst = std::max(worst, std::abs(t.Xt[n][b] + rb.Xt[n][0]));
                }
            }
        }
    }
    const double secs = sw.seconds();
    const bool ok = worst <= 1e-8 && secs < 10.0;
    report(2, "even symmetry / odd antisymmetry, 3 weights, 8 bases", worst, 1e-8, secs, 10.0,
           ok);
    CHECK(worst <= 1e-8);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 03: alternating binomial identity") {
    Stopwatch sw;
    double worst = 0.0;
    for (const WeightCase& c : reference_weights()) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable t = build_power_table(phi, 0, 8);
        for (std::size_t n = 2; n <= 8; n += 2) {
            cvec acc(g.size(), cplx{0.0, 0.0});
            double scale = 0.0, coef = 1.0;
            for (std::size_t k = 0; k <= n; ++k) {
                const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    const cplx term = t.X[k][i] * t.Xt[n - k][i];
                    acc[i] += sgn * coef * term;
                    scale = std::max(scale, coef * std::abs(term));
                }
                coef = coef * double(n - k) / double(k + 1);
            }
            worst = std::max(worst, testsupport::sup_abs(acc) / scale);
        }
    }
    const double secs = sw.seconds();
    report(3, "binomial identity, n in {2,4,6,8}", worst, 1e-8, secs, 0.0, worst <= 1e-8);
    CHECK(worst <= 1e-8);
}

TEST_CASE("criterion 04: Pythagorean identities with certified truncation") {
    Stopwatch sw;
    double worst = 0.0;
    for (const WeightCase& c : reference_weights()) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable probe = build_power_table(phi, 0, 1);
        const double odd_factor = 1.0 + g.length() * probe.max_inv_phi;
        const std::size_t K = auto_truncation(probe.c_bound, odd_factor, 1e-10);
        PowerTable t = build_power_table(phi, 0, 2 * K + 1);
        PhiTrigSet trig = build_trig(t, 1e-10);
        for (std::size_t i = 0; i < g.size(); ++i) {
            worst = std::max(worst, std::abs(trig.C[i] * trig.Ct[i] +
                                             trig.S[i] * trig.St[i] - 1.0));
            worst = std::max(worst, std::abs(trig.Ch[i] * trig.Cht[i] -
                                             trig.Sh[i] * trig.Sht[i] - 1.0));
        }
    }
    const double secs = sw.seconds();
    report(4, "Pythagorean identities, elliptic and hyperbolic", worst, 1e-8, secs, 0.0,
           worst <= 1e-8);
    CHECK(worst <= 1e-8);
}

TEST_CASE("criterion 05: derivative formulas for the power rows") {
    Stopwatch sw;
    double worst = 0.0;
    for (const WeightCase& c : reference_weights()) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable t = build_power_table(phi, 0, 8);
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t k = 1; k <= std::min<std::size_t>(n, 6); ++k) {
                double fac = 1.0;
                for (std::size_t i = n - k + 1; i <= n; ++i) fac *= double(i);
                auto check = [&](PowerDerivativeVariant v, const cvec& row) {
                    cvec lhs = phi_derivative_power(t, k, n, v);
                    double r = 0.0, sc = 1.0;
                    for (std::size_t i = 0; i < g.size(); ++i) {
                        r = std::max(r, std::abs(lhs[i] - fac * row[i]));
                        sc = std::max(sc, std::abs(fac * row[i]));
                    }
                    worst = std::max(worst, r / sc);
                };
                if (k % 2 == n % 2) {
                    check(PowerDerivativeVariant::D_on_X, t.X[n - k]);
                    check(PowerDerivativeVariant::Dt_on_Xt, t.Xt[n - k]);
                } else if (n > k) {
                    check(PowerDerivativeVariant::Dt_on_X, t.X[n - k]);
                    check(PowerDerivativeVariant::D_on_Xt, t.Xt[n - k]);
                }
            }
    }
    const double secs = sw.seconds();
    report(5, "operator chains lower the rows with factorial factors", worst, 1e-8, secs, 0.0,
           worst <= 1e-8);
    CHECK(worst <= 1e-8);
}

TEST_CASE("criterion 06: series expansion with exact remainder") {
    Stopwatch sw;
    double worst = 0.0;
    // exp with the unit weight, order 4
    {
        Grid g = Grid::uniform(0.0, 1.0, 257, 0);
        SampledFunction phi = materialize_phi(FuncSpec::make_constant(cplx{1.0, 0.0}), g);
        PowerTable t = build_power_table(phi, 0, 6);
        cvec v(g.size());
        std::vector<cvec> ders(6, cvec(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i) {
            v[i] = std::exp(g.node(i));
            for (std::size_t k = 0; k < 6; ++k) ders[k][i] = v[i];
        }
        SampledFunction f(g, v, ders);
        TaylorExpansion te = taylor_expand(f, t, 4);
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst,
                             std::abs(te.partial_sum[i] + te.remainder[i] - f.values[i]));
    }
    // sin with the shifted-square weight, order 5
    {
        Grid g = Grid::uniform(0.0, 1.0, 257, 0);
        SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
        PowerTable t = build_power_table(phi, 0, 8);
        cvec v(g.size());
        std::vector<cvec> ders(6, cvec(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.node(i);
            const double table4[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
            v[i] = table4[0];
            for (std::size_t k = 1; k <= 6; ++k) ders[k - 1][i] = table4[k % 4];
        }
        SampledFunction f(g, v, ders);
        TaylorExpansion te = taylor_expand(f, t, 5);
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst,
                             std::abs(te.partial_sum[i] + te.remainder[i] - f.values[i]));
    }
    // a basis row itself, order 6: delta coefficients and vanishing remainder
    {
        Grid g = Grid::uniform(0.0, 1.0, 257, 0);
        SampledFunction phi = materialize_phi(FuncSpec::sqrt_cosh(), g);
        PowerTable t = build_power_table(phi, 0, 8);
        const std::size_t mrow = 3;
        SampledFunction f(g, t.y_row(mrow));
        std::vector<cvec> ders = row_derivatives(t, mrow, mrow % 2 == 1, 7);
        f.derivatives.assign(ders.begin() + 1, ders.end());
        TaylorExpansion te = taylor_expand(f, t, 6);
        for (std::size_t k = 0; k <= 6; ++k)
            worst = std::max(worst,
                             std::abs(te.coefficients[k] - ((k == mrow) ? 1.0 : 0.0)));
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst,
                             std::abs(te.partial_sum[i] + te.remainder[i] - f.values[i]));
    }
    const double secs = sw.seconds();
    report(6, "expansion exactness for exp, sin and a basis row", worst, 1e-7, secs, 0.0,
           worst <= 1e-7);
    CHECK(worst <= 1e-7);
}

TEST_CASE("criterion 07: Wronskian closed forms vs numeric determinants") {
    Stopwatch sw;
    std::mt19937 rng(41);
    double worst = 0.0;
    for (const WeightCase& c : reference_weights()) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable t = build_power_table(phi, 0, 8);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int rep = 0; rep < 6; ++rep) {
            const std::size_t node = pick(rng);
            for (std::size_t n = 1; n <= 4; ++n) {
                auto [wn, wtn] = wronskian_closed_form(t, n, node);
                worst = std::max(worst,
                                 std::abs(wronskian_numeric(t, n, node, false) - wn) /
                                     std::abs(wn));
                worst = std::max(worst,
                                 std::abs(wronskian_numeric(t, n, node, true) - wtn) /
                                     std::abs(wtn));
            }
        }
    }
    const double secs = sw.seconds();
    report(7, "Wronskians, n<=4, random nodes", worst, 1e-6, secs, 0.0, worst <= 1e-6);
    CHECK(worst <= 1e-6);
}

TEST_CASE("criterion 08: square-well spectrum") {
    Stopwatch sw;
    const double pi = 3.14159265358979323846;
    Grid g = Grid::uniform(0.0, pi, 1025, 0);
    cvec zeros(g.size(), cplx{0.0, 0.0}), ones(g.size(), cplx{1.0, 0.0});
    SampledFunction V(g, zeros, {zeros, zeros});
    SampledFunction psi0(g, ones, {zeros, zeros});
    SturmLiouvilleProblem prob = schrodinger_problem(V, psi0, 0);
    SppsSeries s = build_spps(prob, 30);
    EigenResult res = dirichlet_eigenvalues(s, 0.0, 17.0, 4);
    double worst = 1e300;
    if (res.eigenvalues.size() == 4) {
        worst = 0.0;
        for (std::size_t n = 0; n < 4; ++n)
            worst = std::max(worst,
                             std::abs(res.eigenvalues[n] - double((n + 1) * (n + 1))));
    }
    const double secs = sw.seconds();
    const bool ok = worst <= 1e-6 && secs < 5.0;
    report(8, "Dirichlet levels n^2 on [0,pi], K=30, M=1025", worst, 1e-6, secs, 5.0, ok);
    CHECK(worst <= 1e-6);
    CHECK(secs < 5.0);
}

TEST_CASE("criterion 09: oscillator partner spectra vs independent grid method") {
    Stopwatch sw;
    Grid g = Grid::uniform(-6.0, 6.0, 1025, 512);
    SampledFunction psi0 = materialize(FuncSpec::gaussian(), g);
    SusyPair pair = build_susy_pair(psi0);
    PartnerSpectrumReport rep = partner_spectrum_check(pair, 3, 27, -0.5, 7.5);
    std::vector<double> o1 = testsupport::fd_dirichlet_eigenvalues(
        [](double x) { return x * x - 1.0; }, -6.0, 6.0, 8193, 4);
    std::vector<double> o2 = testsupport::fd_dirichlet_eigenvalues(
        [](double x) { return x * x + 1.0; }, -6.0, 6.0, 8193, 3);
    double worst = 1e300;
    if (rep.e1.size() >= 4 && rep.e2.size() >= 3) {
        worst = rep.max_shift_mismatch;
        for (std::size_t n = 0; n < 4; ++n)
            worst = std::max(worst, std::abs(rep.e1[n] - o1[n]));
        for (std::size_t n = 0; n < 3; ++n)
            worst = std::max(worst, std::abs(rep.e2[n] - o2[n]));
    }
    const double secs = sw.seconds();
    const bool ok = worst <= 1e-3 && secs < 30.0;
    report(9, "partner spectra and one-level shift on [-6,6]", worst, 1e-3, secs, 30.0, ok);
    CHECK(worst <= 1e-3);
    CHECK(secs < 30.0);
}

TEST_CASE("criterion 10: composition coefficients for all builtin weights") {
    Stopwatch sw;
    const WeightCase cases[] = {
        {FuncSpec::make_constant(cplx{1.0, 0.0}), 0.0, 1.0},
        {FuncSpec::shifted_square(), 0.0, 1.0},
        {FuncSpec::sqrt_cosh(), 0.0, 1.0},
        {FuncSpec::cosh_spec(), 0.0, 1.0},
        {FuncSpec::gaussian_ground(), -1.0, 1.0},
        {FuncSpec::gaussian(), -1.0, 1.0},
    };
    double worst = 0.0;
    for (const WeightCase& c : cases) {
        Grid g = Grid::uniform(c.a, c.b, 129, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t m = 1; n + m <= 4; ++m)
                worst = std::max(worst, proposition51_check(phi, n, m).max());
    }
    const double secs = sw.seconds();
    report(10, "kernel power bridges, 2n+2m<=8, 6 weights", worst, 1e-7, secs, 0.0,
           worst <= 1e-7);
    CHECK(worst <= 1e-7);
}

TEST_CASE("criterion 11: Neumann resolvent matches the power series solutions") {
    Stopwatch sw;
    Grid g = Grid::uniform(-1.0, 1.0, 513, 0);
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        SampledFunction psi0 = which == 0
                                   ? materialize(FuncSpec::make_constant(cplx{1.0, 0.0}), g)
                                   : materialize(FuncSpec::gaussian(), g);
        cvec phiv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            phiv[i] = psi0.values[i] * psi0.values[i];
        SampledFunction phi(g, phiv);
        PowerTable t = build_power_table(phi, 0, 27);
        for (double lam : {0.0, 1.0, -1.0}) {
            ResolventSolution r = resolvent_solution(psi0, cplx{lam, 0.0}, 0);
            cvec s1(g.size(), cplx{0.0, 0.0}), s2(g.size(), cplx{0.0, 0.0});
            double lk = 1.0, f_even = 1.0, f_odd = 1.0;
            for (std::size_t k = 0; k <= 13; ++k) {
                f_even = (k == 0) ? 1.0 : f_even * double(2 * k - 1) * double(2 * k);
                f_odd = (k == 0) ? 1.0 : f_odd * double(2 * k) * double(2 * k + 1);
                for (std::size_t i = 0; i < g.size(); ++i) {
                    s1[i] += lk * t.Xt[2 * k][i] / f_even;
                    s2[i] += lk * t.X[2 * k + 1][i] / f_odd;
                }
                lk *= lam;
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                s1[i] *= psi0.values[i];
                s2[i] *= psi0.values[i];
            }
            worst = std::max(worst, testsupport::sup_diff(r.u1_part, s1));
            worst = std::max(worst, testsupport::sup_diff(r.u2_part, s2));
        }
    }
    const double secs = sw.seconds();
    const bool ok = worst <= 1e-7 && secs < 60.0;
    report(11, "resolvent vs series, lambda in {0,1,-1}, two states", worst, 1e-7, secs, 60.0,
           ok);
    CHECK(worst <= 1e-7);
    CHECK(secs < 60.0);
}

TEST_CASE("criterion 12: quadrature convergence order") {
    Stopwatch sw;
    auto max_err = [](std::size_t m) {
        Grid g = Grid::uniform(0.0, 1.0, m, 0);
        cvec f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::cos(7.0 * g.node(i));
        cvec F = cumulative_integral(g, f, 0);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(F[i] - std::sin(7.0 * g.node(i)) / 7.0));
        return worst;
    };
    const double ratio = max_err(65) / max_err(129);
    const double secs = sw.seconds();
    report(12, "halving h shrinks the error by >= 12x", ratio, 12.0, secs, 0.0, ratio >= 12.0);
    CHECK(ratio >= 12.0);
}
