// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>

#include "viscolab/params.hpp"

namespace viscolab {

// Which quadratic family a branch pair solves:
//   Lambda: z^2 + nu k^2 z + beta^2 k^2 = 0          (transverse / shear sector)
//   Mu:     z^2 + (nu+nu~) k^2 z + (beta^2+gamma^2) k^2 = 0   (longitudinal sector)
enum class BranchFamily { Lambda, Mu };

struct BranchPair {
    std::complex<double> plus;   // root with the larger (less negative) real part
    std::complex<double> minus;
    bool coalesced = false;      // |discriminant| < 1e-9 * max(1, k^4)
    BranchFamily family = BranchFamily::Lambda;
};

// Eigenvalue branches at radial frequency k >= 0. Both roots are real, or they form a
// complex-conjugate pair; real parts are <= 0 for all k. Computed cancellation-free
// (Vieta form for the small root in the real regime).
BranchPair lambda_pm(const FluidParams& p, double k);
BranchPair mu_pm(const FluidParams& p, double k);

// Residual of each defining quadratic evaluated at its computed roots,
// |z^2 + a z + b| summed over the pair: {lambda family, mu family}.
// Scale against max(1, k^4) when testing.
std::array<double, 2> vieta_residual(const FluidParams& p, double k);

// Frequencies at which each discriminant vanishes (real <-> conjugate switch):
// 2*beta/nu for Lambda, 2*sqrt(beta^2+gamma^2)/(nu+nu~) for Mu.
double coalescence_radius(const FluidParams& p, BranchFamily f);

// Low/high frequency band thresholds:
//   M1 = min(beta/nu, sqrt(beta^2+gamma^2)/(nu+nu~)),  M2 = max(...).
struct BandThresholds {
    double M1;
    double M2;
};
BandThresholds band_thresholds(const FluidParams& p);

} // namespace viscolab
