// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "viscolab/params.hpp"
#include "viscolab/state.hpp"

namespace viscolab {

// Smooth transition: 0 for s <= 0, 1 for s >= 1, C^infinity in between
// (the classical e^{-1/s} mollifier quotient).
double smooth_step(double s);

// Radial cutoff family splitting frequency space into low / middle / high bands,
// anchored at the dispersion thresholds M1 <= M2:
//   low  = 1 on k <= M1/2,        0 on k >= M1/sqrt(2)
//   high = 0 on k <= sqrt(2)*M2,  1 on k >= 2*M2
//   mid  = 1 - low - high  (so the three sum to 1 exactly)
struct CutoffFamily {
    double M1 = 0.0;
    double M2 = 0.0;
};
CutoffFamily cutoff_family(const FluidParams& p);

struct BandWeights {
    double low = 0.0;
    double mid = 0.0;
    double high = 0.0;
};
BandWeights cutoff_values(const CutoffFamily& f, double k);
BandWeights band_weights(const FluidParams& p, double k); // cutoff_values at the params' family

// Band projections of a spectral state. Low/Mid/High multiply by one cutoff;
// P1 is the low cutoff, Pinf its complement (mid + high), so P1 + Pinf = identity.
enum class Band { Low, Mid, High, P1, Pinf };
SpectralState project_band(const SpectralState& s, const CutoffFamily& f, Band band);

// Helmholtz projectors at each wavevector: Q keeps the longitudinal part
// (xi xi^T / |xi|^2), P = I - Q the solenoidal part. Applied to w, and to G by
// contraction over the row index (so gradient-form G splits with its potential);
// the scalar belongs to the longitudinal sector (P phi = 0, Q phi = phi), which
// keeps P + Q = identity on the whole state. The xi = 0 mode carries no
// direction: P passes it through, Q zeroes it.
enum class Helm { P, Q };
SpectralState helmholtz(const SpectralState& s, Helm which);

// Infimum over the high band {k >= 2*M2} of the slowest branch decay
// min(|Re lambda_pm|, |Re mu_pm|). Evaluated by a log-grid scan plus the
// large-k limits beta^2/nu and (beta^2+gamma^2)/nu_hat.
double high_band_min_decay(const FluidParams& p);

// Same scan restricted to a given radial interval (used to bound the decay of
// band-limited grid data whose support starts below 2*M2).
double min_branch_decay(const FluidParams& p, double k_lo, double k_hi);

} // namespace viscolab
