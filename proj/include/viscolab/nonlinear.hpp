// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "viscolab/params.hpp"
#include "viscolab/state.hpp"

namespace viscolab {

// Right-hand sides of the perturbation system for u = (phi, w, G):
//   d_t phi + div w                                        = g1
//   d_t w - nu Lap w - nu~ grad div w + g^2 grad phi - b^2 div G = g2
//   d_t G - grad w                                         = g3
//   grad phi + div(G^T)                                    = g4   (constraint row)
struct GTerms {
    RealField g1;
    VectorField g2;
    TensorField g3;
    VectorField g4;
};

// Forcing of the displacement formulation U = (-div psi, w, grad psi):
//   N1 = div((grad psi) w),  N3 = -grad((grad psi) w),  so N1 + tr N3 == 0.
struct NonlinearTerms {
    RealField N1;
    VectorField N2;
    TensorField N3;
};

// Pressure Taylor remainder about rho = 1: P(1+phi) = P(1) + gamma^2 phi + R(phi).
// The default linear law has R == 0; the quadratic coefficient q gives R = q phi^2.
RealField pressure_remainder(const Grid& g, const RealField& phi, const FluidParams& p);

// w-equation forcing alone (the only g-term the displacement stepper needs).
// Throws RegimeError when 1 + phi < 0.5 anywhere (vacuum guard).
VectorField g2_term(Transformer& tr, const PerturbationState& u, const FluidParams& p);

// All four right-hand sides. Derivatives are spectral, products pointwise.
GTerms g_terms(Transformer& tr, const PerturbationState& u, const FluidParams& p);

// w-equation forcing of the displacement formulation: u must be the perturbation
// state reconstructed from gradpsi (kinematics maps), with u.w equal to w.
// N2 = g2(u) - gamma^2 grad D + beta^2 div h(grad psi), where
// D = det(I - grad psi) - 1 + div psi collects the super-linear part of -phi.
VectorField n2_term(Transformer& tr, const TensorField& gradpsi, const PerturbationState& u,
                    const FluidParams& p);

// Full displacement-formulation forcing (N1, N2, N3) for the same (gradpsi, u).
NonlinearTerms N_terms(Transformer& tr, const VectorField& w, const TensorField& gradpsi,
                       const PerturbationState& u, const FluidParams& p);

// d_t psi = v - (v . grad) psi, the material displacement equation.
VectorField displacement_rhs(const Grid& g, const TensorField& gradpsi, const VectorField& v);
VectorField displacement_rhs(Transformer& tr, const VectorField& psi, const VectorField& v);

} // namespace viscolab
