// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "viscolab/radial.hpp"
#include "viscolab/spectral.hpp"

namespace viscolab {

// det(I + A) through the invariant expansion
//   1 + tr A + ((tr A)^2 - tr A^2)/2 + det A.
// The middle term is the second elementary symmetric function of the eigenvalues;
// the sign is fixed by agreement with the direct determinant (diag(a,b,c) check).
double det_expansion(const Eigen::Matrix3d& A);

// Pointwise kinematic maps between the displacement gradient A = grad psi and the
// deformation perturbation G, linked by I + G = (I - A)^{-1}:
//   gradpsi_to_G: near-singular I - A (condition estimate > 1e6) -> RegimeError
//   G_to_gradpsi: exact algebraic inverse, A = I - (I + G)^{-1}
//   phi_from_gradpsi: phi = det(I - A) - 1 via the expansion above
//   h_remainder: h(A) = (I - A)^{-1} - I - A, the quadratic tail (|h| <= 2|A|^2
//                for |A| <= 0.3 by the Neumann series)
TensorField gradpsi_to_G(const TensorField& gradpsi);
TensorField G_to_gradpsi(const TensorField& G);
RealField phi_from_gradpsi(const TensorField& gradpsi);
TensorField h_remainder(const TensorField& gradpsi);

struct ResidualSummary {
    double linf = 0.0;
    double l2 = 0.0;
};

// The three exact invariants of the flow, evaluated as residual fields and
// summarized: rho det F = 1; the Piola identity
// sum_m (F_ml d_m F_jk - F_mk d_m F_jl) = 0; div(rho F^T) = 0.
struct ConstraintResiduals {
    ResidualSummary r_det;
    ResidualSummary r_piola;
    ResidualSummary r_div;
};
ConstraintResiduals constraint_residuals(Transformer& tr, const RealField& rho,
                                         const VectorField& v, const TensorField& F);

// Consistent initial data generated from a displacement potential and a velocity:
// F0^{-1} = I - grad psi0, rho0 = det F0^{-1}. The invariants hold by construction,
// so the returned residuals measure only the discrete-differentiation floor.
struct InitialData {
    RealField rho;
    VectorField v;
    TensorField F;
    ConstraintResiduals residuals;
};
InitialData build_initial_data(Transformer& tr, const VectorField& psi0, const VectorField& v0);

// Low-frequency admissibility of sampled initial spectra on the ball |xi| <= r:
// |phi_hat| > c0 and |m_hat| + |skew G_hat| <= c1 |xi|^{eta0}. Margins are the
// worst-case slack of each clause (negative = violated).
struct LowfreqCheck {
    bool pass = false;
    bool phi_clause = false;
    bool grad_clause = false;
    double phi_margin = 0.0;
    double grad_margin = 0.0;
};
LowfreqCheck lowfreq_condition_check(const RadialInitialSamples& s, double r, double c0,
                                     double c1, double eta0);

} // namespace viscolab
