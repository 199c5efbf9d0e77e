#ifndef GENPOW_VOLTERRA_HPP
#define GENPOW_VOLTERRA_HPP

#include "genpow/power_table.hpp"

namespace genpow {

/// Dense two-argument kernel f(x_i, x_j) on a grid. Composition of the first
/// type is (f*g)(x,y) = int_x^y f(x,xi) g(xi,y) dxi, evaluated with the same
/// cumulative quadrature as everything else.
struct Kernel {
    Grid grid;
    std::vector<cvec> values;  // [i][j]
    bool ordered = false;      // entries with j < i implied zero in exact math

    Kernel(Grid g, std::vector<cvec> v, bool ord = false);
    std::size_t size() const { return grid.size(); }
};

/// The constant kernel 1(x,y) = 1.
Kernel kernel_one(const Grid& grid);

/// sigma(x,y) = Phi(y)/Phi(x).
Kernel kernel_sigma(const SampledFunction& phi);

/// Two-argument power rows: [i][j] = X^(n)(x_i, x_j) (or Xt with tilde),
/// built by re-running the recursion from every base node.
Kernel two_argument_power(const SampledFunction& phi, std::size_t n, bool tilde);

/// Scales a kernel by a function of its second argument (in place copy).
Kernel scale_second_argument(const Kernel& k, const cvec& factor);

Kernel compose(const Kernel& f, const Kernel& g);

/// f^<n> = f^<n-1> * f; n = 0 is the composition identity (a Dirac delta) and
/// is rejected.
Kernel kernel_power(const Kernel& f, std::size_t n);

/// Residuals of the four power-bridge identities
///   Phi X^(2n-1) * X^(2m)      = A_{n,m} X^(2n+2m)
///   Phi X^(2n-1) * X^(2m-1)    = B_{n,m} X^(2n+2m-1)
/// and their conjugates, with A_{n,m} = (2n-1)!(2m)!/(2n+2m)! and
/// B_{n,m} = (2n-1)!(2m-1)!/(2n+2m-1)!. Relative to the right-hand sup-norm.
struct Proposition51Report {
    double a_residual, b_residual, a_tilde_residual, b_tilde_residual;
    double max() const;
};

Proposition51Report proposition51_check(const SampledFunction& phi, std::size_t n, std::size_t m);

/// Neumann-series resolvent parts of the Schrodinger solution for Phi = psi0^2:
///   u1_part = psi0 * (1 + sum_k lambda^k (rhot^<k> * 1)(x0, .))
///   u2_part = (1/psi0) * sum_k lambda^k rho^<k+1>(x0, .)
/// with rho(x,y) = Phi(y)(P(y)-P(x)), P' = 1/Phi, and
/// rhot(x,y) = (Q(y)-Q(x))/Phi(y), Q' = Phi. Kernel powers are propagated
/// row-wise from x0 (O(M^2) per power).
struct ResolventSolution {
    cplx lambda;
    std::size_t x0_index;
    std::size_t neumann_terms;
    double tail_estimate;
    cvec u1_part, u2_part;
};

ResolventSolution resolvent_solution(const SampledFunction& psi0, cplx lambda,
                                     std::size_t x0_index, double series_tol = 1e-12);

/// Conjugated variant (psi0 -> 1/psi0, rho <-> rhot): the partner-equation
/// solution parts.
ResolventSolution partner_resolvent(const SampledFunction& psi0, cplx lambda,
                                    std::size_t x0_index, double series_tol = 1e-12);

}  // namespace genpow

#endif
