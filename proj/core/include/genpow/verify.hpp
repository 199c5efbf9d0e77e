#ifndef GENPOW_VERIFY_HPP
#define GENPOW_VERIFY_HPP

#include "genpow/grid.hpp"

#include <string>
#include <vector>

namespace genpow {

struct CheckResult {
    std::string name;
    double residual;
    double tolerance;
    bool passed() const { return residual <= tolerance; }
};

/// Runs the identity suite for one Phi on one grid: quadrature properties,
/// symmetry/antisymmetry, binomial and Pythagorean identities, derivative
/// formulas, Wronskians and fundamental sets (real positive Phi only),
/// kernel-power bridges and the composition coefficients.
std::vector<CheckResult> run_verification(const PhiSpec& phi_spec, const Grid& grid);

}  // namespace genpow

#endif
