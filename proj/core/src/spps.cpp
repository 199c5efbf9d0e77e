#include "genpow/spps.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace genpow {

namespace {

double factorial(std::size_t n) {
    double r = 1.0;
    for (std::size_t i = 2; i <= n; ++i) r *= double(i);
    return r;
}

double sup_abs(const cvec& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<cvec> recursion_rows(const Grid& grid, const cvec& w_odd, const cvec& w_even,
                                 std::size_t x0_index, std::size_t order) {
    const std::size_t m = grid.size();
    std::vector<cvec> rows;
    rows.emplace_back(m, cplx{1.0, 0.0});
    cvec scratch(m);
    for (std::size_t n = 1; n <= order; ++n) {
        const cvec& w = (n % 2 == 1) ? w_odd : w_even;
        for (std::size_t i = 0; i < m; ++i) scratch[i] = rows[n - 1][i] * w[i];
        cvec next = cumulative_integral(grid, scratch, x0_index);
        for (cplx& v : next) v *= double(n);
        rows.push_back(std::move(next));
    }
    return rows;
}

cvec first_derivative(const SampledFunction& f) {
    return f.has_derivative(1) ? f.derivatives[0] : finite_difference(f.grid, f.values);
}

}  // namespace

SturmLiouvilleProblem make_problem(SampledFunction p, SampledFunction q, SampledFunction r,
                                   SampledFunction u0, std::size_t x0_index) {
    const Grid& grid = u0.grid;
    if (!p.grid.same_as(grid) || !q.grid.same_as(grid) || !r.grid.same_as(grid))
        throw GridMismatch("p, q, r, u0 must share one grid");
    if (x0_index >= grid.size()) throw GridError("x0_index out of range");
    const double vanish = tolerances().vanish;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(u0.values[i]) <= vanish)
            throw GroundStateVanishes("u0 vanishes at node " + std::to_string(i));
        // 1/(u0^2 p) must stay finite; tiny-but-representable values are fine
        // (the segmented solver is built for that dynamic range)
        if (std::abs(u0.values[i] * u0.values[i] * p.values[i]) <= 1e-290)
            throw GroundStateVanishes("1/(u0^2 p) overflows at node " + std::to_string(i));
    }

    // particular-solution residual (p u0')' + q u0, expanded analytically as
    // p'u0' + p u0'' when the derivative arrays are available, otherwise by
    // finite differences
    const std::size_t m = grid.size();
    cvec u0p = first_derivative(u0);
    cvec d2(m);
    if (p.has_derivative(1) && u0.has_derivative(2)) {
        for (std::size_t i = 0; i < m; ++i)
            d2[i] = p.derivatives[0][i] * u0p[i] + p.values[i] * u0.derivatives[1][i];
    } else {
        cvec pu0p(m);
        for (std::size_t i = 0; i < m; ++i) pu0p[i] = p.values[i] * u0p[i];
        d2 = finite_difference(grid, pu0p);
    }
    double resid = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        resid = std::max(resid, std::abs(d2[i] + q.values[i] * u0.values[i]));
        scale = std::max(scale, std::abs(q.values[i] * u0.values[i]));
        scale = std::max(scale, std::abs(u0.values[i]));
    }
    if (resid > tolerances().resid * scale)
        throw NotAParticularSolution("residual " + std::to_string(resid) +
                                     " exceeds tolerance for scale " + std::to_string(scale));
    return SturmLiouvilleProblem{std::move(p), std::move(q), std::move(r), std::move(u0),
                                 x0_index};
}

SturmLiouvilleProblem schrodinger_problem(const SampledFunction& V, const SampledFunction& psi0,
                                          std::size_t x0_index) {
    const Grid& grid = psi0.grid;
    SampledFunction p = materialize(FuncSpec::make_constant(cplx{-1.0, 0.0}), grid, 1);
    SampledFunction r = materialize(FuncSpec::make_constant(cplx{1.0, 0.0}), grid, 1);
    return make_problem(std::move(p), V, std::move(r), psi0, x0_index);
}

SppsSeries build_spps(const SturmLiouvilleProblem& problem, std::size_t K) {
    const Grid& grid = problem.u0.grid;
    const std::size_t m = grid.size();
    SppsSeries s{grid, problem.x0_index, K, problem.u0.values, cvec(m), cvec(m), {}, {}};
    for (std::size_t i = 0; i < m; ++i) {
        const cplx u2 = problem.u0.values[i] * problem.u0.values[i];
        s.w_odd[i] = 1.0 / (u2 * problem.p.values[i]);
        s.w_even[i] = u2 * problem.r.values[i];
    }
    s.X = recursion_rows(grid, s.w_odd, s.w_even, problem.x0_index, 2 * K + 1);
    s.Xt = recursion_rows(grid, s.w_even, s.w_odd, problem.x0_index, 2 * K + 1);
    return s;
}

SampledFunction evaluate_solution(const SppsSeries& series, cplx lambda, cplx c1, cplx c2,
                                  double series_tol) {
    const std::size_t m = series.grid.size();
    const std::size_t K = series.K;
    cvec u1(m, cplx{0.0, 0.0}), u2(m, cplx{0.0, 0.0});
    cplx lam_k{1.0, 0.0};
    double last_term = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
        const double f_even = factorial(2 * k);
        const double f_odd = factorial(2 * k + 1);
        double t = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const cplx a = lam_k * series.Xt[2 * k][i] / f_even;
            const cplx b = lam_k * series.X[2 * k + 1][i] / f_odd;
            u1[i] += a;
            u2[i] += b;
            t = std::max(t, std::max(std::abs(a), std::abs(b)));
        }
        last_term = t;
        lam_k *= lambda;
    }
    const double scale = std::max(1.0, std::max(sup_abs(u1), sup_abs(u2)));
    if (last_term > series_tol * scale)
        throw TruncationTooSmall(K + 10, "last series term " + std::to_string(last_term) +
                                             " at |lambda| = " + std::to_string(std::abs(lambda)));
    cvec u(m);
    for (std::size_t i = 0; i < m; ++i)
        u[i] = series.u0[i] * (c1 * u1[i] + c2 * u2[i]);
    return SampledFunction(series.grid, std::move(u));
}

namespace {

std::vector<double> bracket_and_bisect(const std::function<double(double)>& f, double lo,
                                       double hi, std::size_t count, std::size_t scan_points,
                                       double root_tol) {
    std::vector<double> mesh(scan_points), vals(scan_points);
    for (std::size_t i = 0; i < scan_points; ++i) {
        mesh[i] = lo + (hi - lo) * double(i) / double(scan_points - 1);
        vals[i] = f(mesh[i]);
    }
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < scan_points && roots.size() < count; ++i) {
        if (vals[i] == 0.0) {
            roots.push_back(mesh[i]);
            continue;
        }
        if (vals[i] * vals[i + 1] < 0.0) {
            double a = mesh[i], b = mesh[i + 1], fa = vals[i];
            while (b - a > root_tol) {
                const double c = 0.5 * (a + b);
                const double fc = f(c);
                if (fa * fc <= 0.0)
                    b = c;
                else {
                    a = c;
                    fa = fc;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
    }
    if (roots.empty()) throw NoRootsInRange("no sign changes of the characteristic in range");
    return roots;
}

}  // namespace

EigenResult dirichlet_eigenvalues(const SppsSeries& series, double lambda_lo, double lambda_hi,
                                  std::size_t count, std::size_t scan_points) {
    if (series.x0_index != 0)
        throw ConfigError("Dirichlet eigensolver requires x0 at the left endpoint");
    if (!(lambda_lo < lambda_hi)) throw NoRootsInRange("empty lambda range");
    const std::size_t K = series.K;
    const std::size_t last = series.grid.size() - 1;
    std::vector<double> coef(K + 1);
    for (std::size_t k = 0; k <= K; ++k)
        coef[k] = series.X[2 * k + 1][last].real() / factorial(2 * k + 1);

    const double lam_max = std::max(std::abs(lambda_lo), std::abs(lambda_hi));
    double tmax = 0.0, pw = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
        tmax = std::max(tmax, std::abs(coef[k]) * pw);
        pw *= lam_max;
    }
    const double last_term = std::abs(coef[K]) * std::pow(lam_max, double(K));
    if (last_term > 1e-9 * std::max(1.0, tmax))
        throw TruncationTooSmall(K + 10, "characteristic tail not certified at the range edge");

    auto charfn = [&](double lam) {
        double v = 0.0;
        for (std::size_t k = K + 1; k-- > 0;) v = v * lam + coef[k];
        return v;
    };
    EigenResult r;
    r.K = K;
    r.lambda_lo = lambda_lo;
    r.lambda_hi = lambda_hi;
    r.eigenvalues = bracket_and_bisect(charfn, lambda_lo, lambda_hi, count, scan_points,
                                       tolerances().root);
    for (double x : r.eigenvalues) r.residuals.push_back(std::abs(charfn(x)));
    return r;
}

namespace {

struct Segment {
    cplx u0L, u0pL, u0R, u0pR, w_oddL;
    std::vector<cplx> XR, XtR, XpR, XtpR;  // endpoint values/derivatives per row
};

std::vector<Segment> build_segments(const SturmLiouvilleProblem& problem, std::size_t K,
                                    std::size_t S) {
    const Grid& grid = problem.u0.grid;
    const std::size_t m = grid.size();
    const std::size_t per = (m - 1) / S;
    if (per * S != m - 1 || per % 2 != 0 || per < 4)
        throw ConfigError("segment count must split the grid into odd-node subgrids");
    cvec u0p_full = first_derivative(problem.u0);

    std::vector<Segment> segs;
    for (std::size_t s = 0; s < S; ++s) {
        const std::size_t i0 = s * per, i1 = (s + 1) * per;
        std::vector<double> nodes(grid.nodes().begin() + std::ptrdiff_t(i0),
                                  grid.nodes().begin() + std::ptrdiff_t(i1 + 1));
        const double sub_a = nodes.front(), sub_b = nodes.back();
        Grid sub(sub_a, sub_b, std::move(nodes), 0);
        const std::size_t sm = sub.size();
        cvec w_odd(sm), w_even(sm);
        for (std::size_t i = 0; i < sm; ++i) {
            const cplx u0v = problem.u0.values[i0 + i];
            w_odd[i] = 1.0 / (u0v * u0v * problem.p.values[i0 + i]);
            w_even[i] = u0v * u0v * problem.r.values[i0 + i];
        }
        std::vector<cvec> X = recursion_rows(sub, w_odd, w_even, 0, 2 * K + 1);
        std::vector<cvec> Xt = recursion_rows(sub, w_even, w_odd, 0, 2 * K + 1);
        Segment sg;
        sg.u0L = problem.u0.values[i0];
        sg.u0R = problem.u0.values[i1];
        sg.u0pL = u0p_full[i0];
        sg.u0pR = u0p_full[i1];
        sg.w_oddL = w_odd[0];
        sg.XR.resize(2 * K + 2);
        sg.XtR.resize(2 * K + 2);
        sg.XpR.assign(2 * K + 2, cplx{0.0, 0.0});
        sg.XtpR.assign(2 * K + 2, cplx{0.0, 0.0});
        for (std::size_t n = 0; n <= 2 * K + 1; ++n) {
            sg.XR[n] = X[n][sm - 1];
            sg.XtR[n] = Xt[n][sm - 1];
            if (n >= 1) {
                const cplx wx = (n % 2 == 1) ? w_odd[sm - 1] : w_even[sm - 1];
                const cplx wt = (n % 2 == 1) ? w_even[sm - 1] : w_odd[sm - 1];
                sg.XpR[n] = double(n) * X[n - 1][sm - 1] * wx;
                sg.XtpR[n] = double(n) * Xt[n - 1][sm - 1] * wt;
            }
        }
        segs.push_back(std::move(sg));
    }
    return segs;
}

std::size_t auto_segments(const SturmLiouvilleProblem& problem) {
    const Grid& grid = problem.u0.grid;
    const std::size_t m = grid.size();
    std::size_t best = 1;
    for (std::size_t S = 1; (m - 1) / S >= 4 && (m - 1) % S == 0; S *= 2) {
        if (((m - 1) / S) % 2 != 0) break;
        const std::size_t per = (m - 1) / S;
        double worst = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            double max_we = 0.0, max_wo = 0.0;
            for (std::size_t i = s * per; i <= (s + 1) * per; ++i) {
                const cplx u0v = problem.u0.values[i];
                max_we = std::max(max_we, std::abs(u0v * u0v * problem.r.values[i]));
                max_wo = std::max(max_wo, std::abs(1.0 / (u0v * u0v * problem.p.values[i])));
            }
            const double len = grid.spacing() * double(per);
            worst = std::max(worst, max_we * max_wo * len * len);
        }
        best = S;
        if (worst <= 60.0) return S;
    }
    return best;
}

}  // namespace

EigenResult dirichlet_eigenvalues_segmented(const SturmLiouvilleProblem& problem, std::size_t K,
                                            std::size_t segments, double lambda_lo,
                                            double lambda_hi, std::size_t count,
                                            std::size_t scan_points) {
    if (problem.x0_index != 0)
        throw ConfigError("Dirichlet eigensolver requires x0 at the left endpoint");
    if (!(lambda_lo < lambda_hi)) throw NoRootsInRange("empty lambda range");
    const std::size_t S = segments == 0 ? auto_segments(problem) : segments;
    std::vector<Segment> segs = build_segments(problem, K, S);

    auto charfn = [&](double lam) {
        double u = 0.0, up = 1.0;
        for (const Segment& sg : segs) {
            const cplx c1 = u / sg.u0L;
            const cplx c2 = (up - c1 * sg.u0pL) / (sg.u0L * sg.w_oddL);
            cplx s1{0, 0}, s1p{0, 0}, s2{0, 0}, s2p{0, 0};
            double lam_k = 1.0;
            for (std::size_t k = 0; k <= K; ++k) {
                const double fe = factorial(2 * k), fo = factorial(2 * k + 1);
                s1 += lam_k * sg.XtR[2 * k] / fe;
                s1p += lam_k * sg.XtpR[2 * k] / fe;
                s2 += lam_k * sg.XR[2 * k + 1] / fo;
                s2p += lam_k * sg.XpR[2 * k + 1] / fo;
                lam_k *= lam;
            }
            const cplx u1 = sg.u0R * s1, u1p = sg.u0pR * s1 + sg.u0R * s1p;
            const cplx u2 = sg.u0R * s2, u2p = sg.u0pR * s2 + sg.u0R * s2p;
            u = (c1 * u1 + c2 * u2).real();
            up = (c1 * u1p + c2 * u2p).real();
        }
        return u;
    };

    EigenResult r;
    r.K = K;
    r.lambda_lo = lambda_lo;
    r.lambda_hi = lambda_hi;
    r.eigenvalues = bracket_and_bisect(charfn, lambda_lo, lambda_hi, count, scan_points,
                                       tolerances().root);
    for (double x : r.eigenvalues) r.residuals.push_back(std::abs(charfn(x)));
    return r;
}

}  // namespace genpow
