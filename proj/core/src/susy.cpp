#include "genpow/susy.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace genpow {

namespace {

double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

cvec first_derivative(const SampledFunction& f) {
    return f.has_derivative(1) ? f.derivatives[0] : finite_difference(f.grid, f.values);
}

}  // namespace

SusyPair build_susy_pair(const SampledFunction& psi0) {
    const Grid& grid = psi0.grid;
    const std::size_t m = grid.size();
    const double vanish = tolerances().vanish;
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(psi0.values[i]) <= vanish)
            throw GroundStateVanishes("psi0 vanishes at node " + std::to_string(i));

    cvec psi0p = first_derivative(psi0);
    cvec w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = -psi0p[i] / psi0.values[i];

    cvec wp(m);
    if (psi0.has_derivative(2)) {
        // W' = -psi0''/psi0 + W^2
        for (std::size_t i = 0; i < m; ++i)
            wp[i] = -psi0.derivatives[1][i] / psi0.values[i] + w[i] * w[i];
    } else {
        wp = finite_difference(grid, w);
    }

    cvec v1(m), v2(m);
    for (std::size_t i = 0; i < m; ++i) {
        v1[i] = w[i] * w[i] - wp[i];
        v2[i] = w[i] * w[i] + wp[i];
    }

    // phi = psi0^2 with derivative arrays by Leibniz up to what psi0 carries
    cvec phi(m);
    for (std::size_t i = 0; i < m; ++i) phi[i] = psi0.values[i] * psi0.values[i];
    std::vector<cvec> pd;
    pd.push_back(psi0.values);
    for (const cvec& d : psi0.derivatives) pd.push_back(d);
    std::vector<cvec> phi_ders;
    for (std::size_t mm = 1; mm + 1 <= pd.size(); ++mm) {
        cvec d(m, cplx{0.0, 0.0});
        for (std::size_t j = 0; j <= mm; ++j) {
            if (j >= pd.size() || mm - j >= pd.size()) continue;
            const double c = binom(mm, j);
            for (std::size_t i = 0; i < m; ++i) d[i] += c * pd[j][i] * pd[mm - j][i];
        }
        phi_ders.push_back(std::move(d));
    }

    SusyPair pair{
        psi0,
        SampledFunction(grid, std::move(w), {wp}),
        SampledFunction(grid, std::move(v1)),
        SampledFunction(grid, std::move(v2)),
        SampledFunction(grid, std::move(phi), std::move(phi_ders)),
    };
    return pair;
}

SusyPair r_transform(const SusyPair& pair) {
    const Grid& grid = pair.psi0.grid;
    const std::size_t m = grid.size();
    cvec inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = 1.0 / pair.psi0.values[i];

    // derivatives of 1/psi0 by the Leibniz solve of psi0 * (1/psi0) = 1
    std::vector<cvec> pd;
    pd.push_back(pair.psi0.values);
    for (const cvec& d : pair.psi0.derivatives) pd.push_back(d);
    std::vector<cvec> rders;
    std::vector<cvec> r;  // r[0] = 1/psi0
    r.push_back(inv);
    for (std::size_t mm = 1; mm < pd.size(); ++mm) {
        cvec d(m, cplx{0.0, 0.0});
        for (std::size_t j = 1; j <= mm; ++j) {
            const double c = binom(mm, j);
            for (std::size_t i = 0; i < m; ++i) d[i] += c * pd[j][i] * r[mm - j][i];
        }
        for (std::size_t i = 0; i < m; ++i) d[i] = -d[i] / pd[0][i];
        r.push_back(d);
        rders.push_back(std::move(d));
    }
    return build_susy_pair(SampledFunction(grid, std::move(inv), std::move(rders)));
}

PartnerSpectrumReport partner_spectrum_check(const SusyPair& pair, std::size_t n_levels,
                                             std::size_t K, double lambda_lo, double lambda_hi) {
    PartnerSpectrumReport rep{{}, {}, 0.0};
    if (n_levels == 0) return rep;

    SturmLiouvilleProblem h1 = schrodinger_problem(pair.V1, pair.psi0, 0);
    EigenResult r1 =
        dirichlet_eigenvalues_segmented(h1, K, 0, lambda_lo, lambda_hi, n_levels + 1);

    SusyPair flipped = r_transform(pair);
    SturmLiouvilleProblem h2 = schrodinger_problem(pair.V2, flipped.psi0, 0);
    EigenResult r2 = dirichlet_eigenvalues_segmented(h2, K, 0, lambda_lo, lambda_hi, n_levels);

    rep.e1 = r1.eigenvalues;
    rep.e2 = r2.eigenvalues;
    for (std::size_t n = 0; n < n_levels; ++n) {
        if (n >= rep.e2.size() || n + 1 >= rep.e1.size()) break;
        rep.max_shift_mismatch =
            std::max(rep.max_shift_mismatch, std::abs(rep.e2[n] - rep.e1[n + 1]));
    }
    return rep;
}

}  // namespace genpow
