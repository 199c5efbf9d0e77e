#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "genpow/errors.hpp"
#include "genpow/power_table.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace genpow;
using testsupport::sup_diff;

TEST_CASE("unit weight reduces both families to plain monomial powers") {
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
    CHECK(worst <= 1e-10);
}

TEST_CASE("closed values for the shifted-square weight at x = 1") {
    Grid g = Grid::uniform(0.0, 1.0, 257, 0);
    SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
    PowerTable t = build_power_table(phi, 0, 4);
    // X^(1)(0,x) = 1 - 1/(1+x), Xt^(1) = ((1+x)^3 - 1)/3,
    // X^(2)(0,1) = 5/3, Xt^(2)(0,1) = 2/3 by direct antiderivatives.
    CHECK(std::abs(t.X[1].back() - 0.5) <= 1e-12);
    CHECK(std::abs(t.Xt[1].back() - 7.0 / 3.0) <= 1e-12);
    CHECK(std::abs(t.X[2].back() - 5.0 / 3.0) <= 1e-11);
    CHECK(std::abs(t.Xt[2].back() - 2.0 / 3.0) <= 1e-11);
}

TEST_CASE("rows vanish at the base node and start at one") {
    Grid g = Grid::uniform(-1.0, 1.0, 129, 37);
    SampledFunction phi = materialize_phi(FuncSpec::gaussian_ground(), g);
    PowerTable t = build_power_table(phi, 37, 8);
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(std::abs(t.X[n][37]) == 0.0);
        CHECK(std::abs(t.Xt[n][37]) == 0.0);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(t.X[0][i] == cplx{1.0, 0.0});
        CHECK(t.Xt[0][i] == cplx{1.0, 0.0});
    }
}

TEST_CASE("conjugation by 1/Phi swaps the families and is an involution") {
    Grid g = Grid::uniform(0.0, 1.0, 129, 0);
    SampledFunction phi = materialize_phi(FuncSpec::sqrt_cosh(), g);
    PowerTable t = build_power_table(phi, 0, 6);
    PowerTable c = conjugate_table(t);
    PowerTable cc = conjugate_table(c);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 6; ++n) {
        worst = std::max(worst, sup_diff(c.X[n], t.Xt[n]));
        worst = std::max(worst, sup_diff(c.Xt[n], t.X[n]));
        worst = std::max(worst, sup_diff(cc.X[n], t.X[n]));
        worst = std::max(worst, sup_diff(cc.Xt[n], t.Xt[n]));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("symmetry of even rows and antisymmetry of odd rows in the two arguments") {
    struct Case {
        FuncSpec spec;
        double a, b;
    };
    const Case cases[] = {
        {FuncSpec::shifted_square(), 0.0, 1.0},
        {FuncSpec::sqrt_cosh(), 0.0, 1.0},
        {FuncSpec::gaussian_ground(), -1.0, 1.0},
    };
    std::mt19937 rng(17);
    for (const Case& c : cases) {
        Grid g = Grid::uniform(c.a, c.b, 257, 0);
        SampledFunction phi = materialize_phi(c.spec, g);
        PowerTable t = build_power_table(phi, 0, 8);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        double worst = 0.0;
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
        CAPTURE(c.spec.name());
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("power_at_base matches a rebased table row") {
    Grid g = Grid::uniform(0.0, 1.0, 129, 0);
    SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
    PowerTable t = build_power_table(phi, 0, 5);
    PowerTable rb = rebase_table(t, 64, 5);
    CHECK(sup_diff(power_at_base(t, 3, 64, false), rb.X[3]) <= 1e-14);
    CHECK(sup_diff(power_at_base(t, 4, 64, true), rb.Xt[4]) <= 1e-14);
}

TEST_CASE("alternating binomial sum of mixed products vanishes for even order") {
    const FuncSpec specs[] = {FuncSpec::shifted_square(), FuncSpec::sqrt_cosh(),
                              FuncSpec::gaussian_ground()};
    for (const FuncSpec& spec : specs) {
        const double a = (spec.kind == FuncSpec::Kind::GaussianGround) ? -1.0 : 0.0;
        Grid g = Grid::uniform(a, 1.0, 257, 0);
        SampledFunction phi = materialize_phi(spec, g);
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
            CAPTURE(spec.name());
            CAPTURE(n);
            CHECK(testsupport::sup_abs(acc) / scale <= 1e-8);
        }
    }
}

TEST_CASE("growth bounds from the convergence constant hold") {
    Grid g = Grid::uniform(0.0, 1.0, 129, 0);
    SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
    PowerTable t = build_power_table(phi, 0, 12);
    for (std::size_t j = 0; 2 * j <= 12; ++j) {
        const double bound = std::pow(t.c_bound, double(j));
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(std::abs(t.X[2 * j][i]) <= bound * (1.0 + 1e-12));
            if (2 * j + 1 <= 12)
                CHECK(std::abs(t.X[2 * j + 1][i]) <=
                      g.length() * t.max_inv_phi * bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("order cap and invalid requests are rejected") {
    Grid g = Grid::uniform(0.0, 1.0, 9, 0);
    SampledFunction phi = materialize_phi(FuncSpec::make_constant(cplx{1.0, 0.0}), g);
    PowerTable t = build_power_table(phi, 0, 3);
    CHECK_THROWS_AS(rebase_table(t, 99, 3), GridError);
    CHECK_THROWS_AS(t.y_row(7), InsufficientOrder);
    CHECK_THROWS_AS(t.yt_row(4), InsufficientOrder);
}
