#ifndef GENPOW_TRIG_HPP
#define GENPOW_TRIG_HPP

#include "genpow/power_table.hpp"

namespace genpow {

/// Generalized sine/cosine and hyperbolic partial sums, e.g.
///   C(x0,x)  = sum_j (-1)^j X^(2j)/(2j)!,   S(x0,x) = sum_j (-1)^j X^(2j+1)/(2j+1)!
/// with tilde variants over the conjugate rows and hyperbolic variants without
/// the alternating sign. K is the last index kept; tail_bound certifies the
/// truncation via sum_{j>K} c^j/(2j)! * (1 + (b-a)*max|1/Phi|).
struct PhiTrigSet {
    std::size_t K;
    double tail_bound;
    cvec C, Ct, S, St;       // elliptic family
    cvec Ch, Cht, Sh, Sht;   // hyperbolic family
};

/// Tail of the truncation certificate for a given K.
double trig_tail_bound(double c_bound, std::size_t K, double odd_factor);

/// Smallest K whose tail bound is <= epsilon; throws ToleranceTooTight when no
/// K below the hard cap achieves it.
std::size_t auto_truncation(double c_bound, double odd_factor, double epsilon);

/// Builds all eight partial sums. The table must hold rows through 2K+1 for
/// the K demanded by epsilon; otherwise InsufficientOrder reports the need.
PhiTrigSet build_trig(const PowerTable& table, double epsilon = 1e-10);

/// Max residuals of DS-C, DtC+S, DSh-Ch, DtCh-Sh using the exact
/// recurrence derivative X^(n)' = n * weight * X^(n-1).
struct TrigDerivativeReport {
    double ds_minus_c;
    double dtc_plus_s;
    double dsh_minus_ch;
    double dtch_minus_sh;
    double max() const;
};

TrigDerivativeReport trig_derivative_check(const PowerTable& table, const PhiTrigSet& trig);

}  // namespace genpow

#endif
