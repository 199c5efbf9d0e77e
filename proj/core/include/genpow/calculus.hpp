#ifndef GENPOW_CALCULUS_HPP
#define GENPOW_CALCULUS_HPP

#include "genpow/power_table.hpp"

#include <utility>

namespace genpow {

/// Which of the four power-derivative formulas is requested.
/// D^(k) and Dt^(k) are the alternating compositions of D h = Phi h' and
/// Dt h = h'/Phi (outermost op named first; the innermost alternates with k).
enum class PowerDerivativeVariant {
    D_on_X,    // D^(k) X^(n),  same parity, n >= k
    Dt_on_Xt,  // Dt^(k) Xt^(n), same parity, n >= k
    Dt_on_X,   // Dt^(k) X^(n),  opposite parity, n > k
    D_on_Xt,   // D^(k) Xt^(n),  opposite parity, n > k
};

/// Derivative arrays [m] = m-th derivative (m = 0..mmax) of 1/Phi obtained by
/// solving the Leibniz identity Phi * (1/Phi) = 1 order by order.
std::vector<cvec> reciprocal_derivatives(const SampledFunction& phi, std::size_t mmax);

/// Derivative arrays of the row X^(n) (tilde_family=false) or Xt^(n) (true),
/// computed from the exact recurrence row' = n * weight * row_{n-1} and the
/// product rule with analytic Phi derivatives.
std::vector<cvec> row_derivatives(const PowerTable& table, std::size_t n, bool tilde_family,
                                  std::size_t mmax);

/// Applies the k-fold alternating operator chain to a function given its
/// derivative arrays fder[m] (m = 0..k). outer_tilde=false gives D^(k),
/// true gives Dt^(k). Returns the value array of the result.
cvec apply_phi_derivative_chain(const std::vector<cvec>& fder, const PowerTable& table,
                                std::size_t k, bool outer_tilde);

/// Left-hand sides of the four power-derivative formulas, computed honestly by
/// chain application on exact row derivatives. Throws ParityMismatch when the
/// stated parity/order conditions fail.
cvec phi_derivative_power(const PowerTable& table, std::size_t k, std::size_t n,
                          PowerDerivativeVariant variant);

/// Generalized Taylor data: f = sum_k coefficients[k] * Y_k(x0,.) + remainder,
/// with coefficients[k] = (Dcal_k f)(x0)/k!, Dcal_k = Dt^(k) odd / D^(k) even,
/// and remainder via the rebased-row integral formula.
struct TaylorExpansion {
    std::size_t base_index;
    std::size_t order;
    cvec coefficients;   // length order+1
    cvec partial_sum;    // over nodes
    cvec remainder;      // over nodes
};

TaylorExpansion taylor_expand(const SampledFunction& f, const PowerTable& table, std::size_t n);

/// alpha_n = prod_{k=0}^n k!
double wronskian_alpha(std::size_t n);

/// Closed forms: W_n = alpha_n (sqrt(Phi))^{n+1} (n odd) or (sqrt(Phi))^n
/// (n even); the tilde form with 1/sqrt(Phi). Requires Phi real positive.
std::pair<double, double> wronskian_closed_form(const PowerTable& table, std::size_t n,
                                                std::size_t node);

/// Determinant of the (n+1)x(n+1) matrix of derivatives (orders 0..n) of the
/// basis members Y_0..Y_n (tilde=false) or Yt_0..Yt_n (true) at one node.
/// Capped at n <= 4.
cplx wronskian_numeric(const PowerTable& table, std::size_t n, std::size_t node, bool tilde);

/// Max residual of applying D^(n+1) to every member of the fundamental set it
/// annihilates (Y_0..Y_n for odd n, Yt_0..Yt_n for even n), relative to the
/// largest member magnitude. Capped at n <= 6.
double fundamental_set_residual(const PowerTable& table, std::size_t n);

/// Cauchy-function particular solution of D^(n+1) y = h (tilde=false) or
/// Dt^(n+1) y = h (true):
///   y_p(x) = (1/n!) int_{x0}^x Xt^(n)(xi,x) h(xi)/Phi(xi) dxi   (untilde)
/// with the conjugate weight Phi and X row for the tilde equation.
SampledFunction particular_solution(const PowerTable& table, const SampledFunction& h,
                                    std::size_t n, bool tilde);

/// Coefficient arrays of the expansions D^(n) f = sum_k a[k] f^{(k)} and
/// Dt^(n) f = sum_k at[k] f^{(k)} for n in {2,3}, obtained from Wronskian
/// minor ratios over the annihilated fundamental set.
struct DerivativeExpansion {
    std::size_t n;
    std::vector<cvec> a;    // length n+1, arrays over nodes
    std::vector<cvec> at;
};

DerivativeExpansion derivative_expansion_coefficients(const PowerTable& table, std::size_t n);

}  // namespace genpow

#endif
