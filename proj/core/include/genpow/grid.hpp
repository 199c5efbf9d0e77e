#ifndef GENPOW_GRID_HPP
#define GENPOW_GRID_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace genpow {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Tolerance knobs. Defaults match the documented contract; each value can be
/// overridden through an environment variable (GENPOW_TOL_IDENTITY,
/// GENPOW_VANISH_TOL, GENPOW_RESID_TOL, GENPOW_ODE_TOL, GENPOW_ROOT_TOL).
struct Tolerances {
    double identity = 1e-8;     // identity-test tolerance on reference grids
    double vanish = 1e-12;      // |Phi| threshold deciding "nonzero"
    double resid = 1e-6;        // particular-solution residual acceptance
    double ode = 1e-5;          // finite-difference ODE residual scale
    double root = 1e-10;        // eigenvalue bisection tolerance
};

const Tolerances& tolerances();

/// Uniform grid on [a,b] with a distinguished base node x0.
/// Node count must be odd and at least 5 (cumulative quadrature pairing).
class Grid {
  public:
    Grid(double a, double b, std::vector<double> nodes, std::size_t x0_index);

    static Grid uniform(double a, double b, std::size_t count, std::size_t x0_index);

    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(std::size_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t x0_index() const { return x0_index_; }
    double x0() const { return nodes_[x0_index_]; }
    double spacing() const { return spacing_; }
    double length() const { return b_ - a_; }

    bool same_as(const Grid& other) const;

  private:
    double a_, b_, spacing_;
    std::vector<double> nodes_;
    std::size_t x0_index_;
};

/// Complex-valued function sampled at the grid nodes. `derivatives[k]` holds
/// the (k+1)-th derivative when known (analytically for builtin specs,
/// by finite differences for tabulated input).
struct SampledFunction {
    Grid grid;
    cvec values;
    std::vector<cvec> derivatives;

    SampledFunction(Grid g, cvec v, std::vector<cvec> d = {});

    const cvec& derivative(std::size_t order = 1) const;  // 1-based order
    bool has_derivative(std::size_t order = 1) const { return derivatives.size() >= order; }
    double max_abs() const;
    double min_abs() const;
    bool is_real(double tol = 1e-13) const;
};

/// Checks the nonvanishing hypothesis; throws NonvanishingViolation naming the node.
void require_nonvanishing(const SampledFunction& f, const std::string& role);

/// Builtin function shapes plus tabulated input. Used for Phi, potentials and
/// ground states alike; materialization fills analytic derivative arrays for
/// the builtins and 4th-order central differences for tables.
struct FuncSpec {
    enum class Kind {
        Constant,       // c
        Polynomial,     // sum c_k x^k
        ShiftedSquare,  // (1+x)^2
        SqrtCosh,       // sqrt(cosh x)
        GaussianGround, // exp(-x^2)   (a squared Gaussian ground state)
        Gaussian,       // exp(-x^2/2)
        Cosh,           // cosh x
        Table,          // node/value pairs, must match the grid exactly
    };

    Kind kind = Kind::Constant;
    cplx constant{1.0, 0.0};
    std::vector<cplx> poly_coeffs;        // ascending powers
    std::vector<double> table_nodes;
    cvec table_values;

    static FuncSpec make_constant(cplx c);
    static FuncSpec make_polynomial(std::vector<cplx> coeffs);
    static FuncSpec shifted_square();
    static FuncSpec sqrt_cosh();
    static FuncSpec gaussian_ground();
    static FuncSpec gaussian();
    static FuncSpec cosh_spec();
    static FuncSpec from_table_csv(const std::string& path);

    std::string name() const;
};

/// A Phi specification is a FuncSpec whose materialization must be nonvanishing.
using PhiSpec = FuncSpec;

/// Samples a spec on the grid with derivative arrays up to `deriv_orders`.
SampledFunction materialize(const FuncSpec& spec, const Grid& grid, std::size_t deriv_orders = 6);

/// Samples a Phi spec and enforces the nonvanishing hypothesis.
SampledFunction materialize_phi(const PhiSpec& spec, const Grid& grid);

/// Cumulative integral F with F[from_index] = 0 and
/// F[i] = integral of f from nodes[from_index] to nodes[i] for every node,
/// by a sixth-order cumulative Newton-Cotes scheme on the uniform grid.
SampledFunction cumulative_integral(const SampledFunction& f, std::size_t from_index);
cvec cumulative_integral(const Grid& grid, const cvec& values, std::size_t from_index);

/// Integral of `values` from nodes[i] to nodes[j] (signed), same scheme.
cplx range_integral(const Grid& grid, const cvec& values, std::size_t i, std::size_t j);

/// First derivative by 4th-order central differences (one-sided at the ends).
cvec finite_difference(const Grid& grid, const cvec& values);

}  // namespace genpow

#endif
