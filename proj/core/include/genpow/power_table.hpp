#ifndef GENPOW_POWER_TABLE_HPP
#define GENPOW_POWER_TABLE_HPP

#include "genpow/grid.hpp"

#include <vector>

namespace genpow {

/// Generalized power rows X^(n)(x0,.) and conjugate rows Xt^(n)(x0,.) for a
/// fixed weight function Phi, built by the alternating iterated-integral
/// recursion:
///   X^(n)  = n * int_{x0}^x X^(n-1)  * Phi^{(-1)^n}
///   Xt^(n) = n * int_{x0}^x Xt^(n-1) * Phi^{-(-1)^n}
/// so odd X steps integrate against 1/Phi and even steps against Phi.
struct PowerTable {
    SampledFunction phi;
    std::size_t x0_index;
    std::size_t order;               // highest row index N
    std::vector<cvec> X;             // (N+1) rows over the grid
    std::vector<cvec> Xt;
    double c_bound;                  // max|Phi| * max|1/Phi| * (b-a)^2
    double max_inv_phi;              // max|1/Phi|

    const Grid& grid() const { return phi.grid; }

    /// Parity-interleaved basis row: Y_n = Xt^(n) for odd n, X^(n) for even n.
    const cvec& y_row(std::size_t n) const;
    /// Conjugate basis row: Yt_n = X^(n) for odd n, Xt^(n) for even n.
    const cvec& yt_row(std::size_t n) const;
};

PowerTable build_power_table(const SampledFunction& phi, std::size_t x0_index, std::size_t order);

/// Table built with 1/Phi: swaps the X and Xt roles exactly.
PowerTable conjugate_table(const PowerTable& table);

/// Rows of both families recomputed from a different base node.
/// Returns a full table sharing the input's Phi but based at base_index.
PowerTable rebase_table(const PowerTable& table, std::size_t base_index, std::size_t order);

/// X^(n)(x_base, .) (or Xt with tilde=true) as an array over all nodes.
cvec power_at_base(const PowerTable& table, std::size_t n, std::size_t base_index,
                   bool tilde = false);

}  // namespace genpow

#endif
