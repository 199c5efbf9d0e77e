#ifndef GENPOW_SUSY_HPP
#define GENPOW_SUSY_HPP

#include "genpow/spps.hpp"

namespace genpow {

/// Superpotential W = -psi0'/psi0 and the partner potentials
/// V1 = W^2 - W', V2 = W^2 + W', with phi = psi0^2 linking into the
/// generalized-power machinery.
struct SusyPair {
    SampledFunction psi0;
    SampledFunction W;
    SampledFunction V1;
    SampledFunction V2;
    SampledFunction phi;  // psi0^2
};

/// psi0 must be nonvanishing; W' comes from psi0'' when available
/// (W' = -psi0''/psi0 + W^2), otherwise from 4th-order differences of W.
SusyPair build_susy_pair(const SampledFunction& psi0);

/// The conjugation psi0 -> 1/psi0: negates W and swaps V1 with V2.
SusyPair r_transform(const SusyPair& pair);

struct PartnerSpectrumReport {
    std::vector<double> e1;       // H1 = -d2/dx2 + V1 Dirichlet levels
    std::vector<double> e2;       // H2 = -d2/dx2 + V2 Dirichlet levels
    double max_shift_mismatch;    // max_n |e2[n] - e1[n+1]|
};

/// Solves both partner Dirichlet eigenproblems through the (segmented) SPPS
/// solver — H1 with u0 = psi0 and H2 with u0 = 1/psi0 — and reports the
/// spectral shift E_n^(2) = E_{n+1}^(1) over n_levels levels.
PartnerSpectrumReport partner_spectrum_check(const SusyPair& pair, std::size_t n_levels,
                                             std::size_t K = 30, double lambda_lo = -0.5,
                                             double lambda_hi = 8.0);

}  // namespace genpow

#endif
