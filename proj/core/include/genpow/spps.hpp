#ifndef GENPOW_SPPS_HPP
#define GENPOW_SPPS_HPP

#include "genpow/power_table.hpp"

namespace genpow {

/// Sturm-Liouville problem (p u')' + q u = lambda r u with a particular
/// solution u0 of the lambda = 0 equation.
struct SturmLiouvilleProblem {
    SampledFunction p, q, r, u0;
    std::size_t x0_index;
};

/// Validates hypotheses: u0 nonvanishing, 1/(u0^2 p) finite, and the
/// particular-solution residual ||(p u0')' + q u0|| small relative to the
/// problem scale (checked by finite differences).
SturmLiouvilleProblem make_problem(SampledFunction p, SampledFunction q, SampledFunction r,
                                   SampledFunction u0, std::size_t x0_index);

/// Schrodinger specialization -psi'' + V psi = lambda psi: p = -1, q = V,
/// r = 1, u0 = psi0 (checked to satisfy the zero-energy equation).
SturmLiouvilleProblem schrodinger_problem(const SampledFunction& V, const SampledFunction& psi0,
                                          std::size_t x0_index);

/// Power rows of the general recursion: odd X steps integrate 1/(u0^2 p),
/// even steps u0^2 r, with the roles swapped for Xt. The two basis solutions
/// are u1 = u0 sum lambda^k Xt[2k]/(2k)! and u2 = u0 sum lambda^k X[2k+1]/(2k+1)!.
struct SppsSeries {
    Grid grid;
    std::size_t x0_index;
    std::size_t K;
    cvec u0;
    cvec w_odd;                 // 1/(u0^2 p)
    cvec w_even;                // u0^2 r
    std::vector<cvec> X, Xt;    // rows 0..2K+1
};

SppsSeries build_spps(const SturmLiouvilleProblem& problem, std::size_t K);

/// u = c1*u1 + c2*u2 at the given lambda; throws TruncationTooSmall when the
/// last kept series term is not negligible at this lambda.
SampledFunction evaluate_solution(const SppsSeries& series, cplx lambda, cplx c1, cplx c2,
                                  double series_tol = 1e-8);

struct EigenResult {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;  // |characteristic| at each root
    std::size_t K;
    double lambda_lo, lambda_hi;
};

/// Dirichlet eigenvalues on [a,b] with x0 = a: roots in lambda of the
/// characteristic polynomial lambda -> u2(b; lambda), found by a uniform scan
/// (default 2000 points) plus bisection to the root tolerance.
EigenResult dirichlet_eigenvalues(const SppsSeries& series, double lambda_lo, double lambda_hi,
                                  std::size_t count, std::size_t scan_points = 2000);

/// Segmented variant for stiff problems whose global series overflow in double
/// precision: the interval is split into S segments, the SPPS basis is built
/// per segment, and (u, u') is propagated across segments before the boundary
/// value at b is taken. segments = 0 picks S automatically from the
/// per-segment convergence constant. Matches dirichlet_eigenvalues when S = 1.
EigenResult dirichlet_eigenvalues_segmented(const SturmLiouvilleProblem& problem, std::size_t K,
                                            std::size_t segments, double lambda_lo,
                                            double lambda_hi, std::size_t count,
                                            std::size_t scan_points = 2000);

}  // namespace genpow

#endif
