#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "genpow/errors.hpp"
#include "genpow/trig.hpp"
#include "support.hpp"

#include <cmath>

using namespace genpow;

namespace {

PhiTrigSet trig_for(const FuncSpec& spec, double a, double b, double eps = 1e-10) {
    Grid g = Grid::uniform(a, b, 257, 0);
    SampledFunction phi = materialize_phi(spec, g);
    PowerTable probe = build_power_table(phi, 0, 1);
    const double odd_factor = 1.0 + g.length() * probe.max_inv_phi;
    const std::size_t K = auto_truncation(probe.c_bound, odd_factor, eps);
    PowerTable t = build_power_table(phi, 0, 2 * K + 1);
    return build_trig(t, eps);
}

}  // namespace

TEST_CASE("unit weight gives the classical circular and hyperbolic functions") {
    Grid g = Grid::uniform(0.0, 1.0, 257, 0);
    SampledFunction phi = materialize_phi(FuncSpec::make_constant(cplx{1.0, 0.0}), g);
    const std::size_t K = auto_truncation(1.0, 2.0, 1e-12);
    PowerTable t = build_power_table(phi, 0, 2 * K + 1);
    PhiTrigSet trig = build_trig(t, 1e-12);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        worst = std::max(worst, std::abs(trig.C[i] - std::cos(x)));
        worst = std::max(worst, std::abs(trig.Ct[i] - std::cos(x)));
        worst = std::max(worst, std::abs(trig.S[i] - std::sin(x)));
        worst = std::max(worst, std::abs(trig.St[i] - std::sin(x)));
        worst = std::max(worst, std::abs(trig.Ch[i] - std::cosh(x)));
        worst = std::max(worst, std::abs(trig.Sh[i] - std::sinh(x)));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("Pythagorean identities hold for several weights") {
    struct Case {
        FuncSpec spec;
        double a, b;
    };
    const Case cases[] = {
        {FuncSpec::shifted_square(), 0.0, 1.0},
        {FuncSpec::sqrt_cosh(), 0.0, 1.0},
        {FuncSpec::gaussian_ground(), -1.0, 1.0},
    };
    for (const Case& c : cases) {
        PhiTrigSet trig = trig_for(c.spec, c.a, c.b);
        double ell = 0.0, hyp = 0.0;
        for (std::size_t i = 0; i < trig.C.size(); ++i) {
            ell = std::max(ell, std::abs(trig.C[i] * trig.Ct[i] + trig.S[i] * trig.St[i] - 1.0));
            hyp = std::max(hyp,
                           std::abs(trig.Ch[i] * trig.Cht[i] - trig.Sh[i] * trig.Sht[i] - 1.0));
        }
        CAPTURE(c.spec.name());
        CHECK(ell <= 1e-8);
        CHECK(hyp <= 1e-8);
        CHECK(trig.tail_bound <= 1e-10);
    }
}

TEST_CASE("tail bound decreases monotonically in K and auto truncation is minimal") {
    const double c = 4.0, odd = 3.0;
    double prev = trig_tail_bound(c, 0, odd);
    for (std::size_t K = 1; K <= 12; ++K) {
        const double cur = trig_tail_bound(c, K, odd);
        CHECK(cur < prev);
        prev = cur;
    }
    const std::size_t K = auto_truncation(c, odd, 1e-10);
    CHECK(trig_tail_bound(c, K, odd) <= 1e-10);
    if (K > 0) CHECK(trig_tail_bound(c, K - 1, odd) > 1e-10);
}

TEST_CASE("derivative relations hold at the truncation level") {
    PhiTrigSet trig = trig_for(FuncSpec::shifted_square(), 0.0, 1.0);
    Grid g = Grid::uniform(0.0, 1.0, 257, 0);
    SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
    PowerTable t = build_power_table(phi, 0, 2 * trig.K + 1);
    TrigDerivativeReport rep = trig_derivative_check(t, trig);
    CHECK(rep.max() <= 1e-8);
}

TEST_CASE("insufficient table order is reported with the required order") {
    Grid g = Grid::uniform(0.0, 1.0, 129, 0);
    SampledFunction phi = materialize_phi(FuncSpec::shifted_square(), g);
    PowerTable t = build_power_table(phi, 0, 3);
    CHECK_THROWS_AS(build_trig(t, 1e-10), InsufficientOrder);
}

TEST_CASE("impossible tolerance requests are rejected") {
    CHECK_THROWS_AS(auto_truncation(4.0, 3.0, 0.0), ToleranceTooTight);
}

TEST_CASE("loose truncation still carries an honest certificate") {
    PhiTrigSet loose = trig_for(FuncSpec::shifted_square(), 0.0, 1.0, 1e-4);
    PhiTrigSet tight = trig_for(FuncSpec::shifted_square(), 0.0, 1.0, 1e-12);
    CHECK(loose.K <= tight.K);
    // partial sums differ by no more than the sum of the two certificates
    double diff = 0.0;
    for (std::size_t i = 0; i < loose.C.size(); ++i)
        diff = std::max(diff, std::abs(loose.C[i] - tight.C[i]));
    CHECK(diff <= loose.tail_bound + tight.tail_bound);
}
