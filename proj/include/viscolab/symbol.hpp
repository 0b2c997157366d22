// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "viscolab/params.hpp"
#include "viscolab/phi_kernels.hpp"

namespace viscolab {

using Vec13 = Eigen::Vector<cplx, 13>;
using Mat13 = Eigen::Matrix<cplx, 13, 13>;

// Component layout of the 13-vector (phi~, w, G~) used everywhere:
//   0      density-like scalar
//   1..3   velocity components
//   4..12  deformation tensor, row-major: G[j][k] at 4 + 3j + k
inline constexpr int idx_phi = 0;
inline constexpr int idx_w(int j) { return 1 + j; }
inline constexpr int idx_G(int j, int k) { return 4 + 3 * j + k; }

// A 13-component Fourier amplitude at one wavevector, restricted to the admissible
// (constraint) subspace: G rows have the gradient form i*psi_hat*xi^T and the trace
// matches -phi. The semigroup formulas are only contracted on such vectors; behavior
// off the subspace is undefined and untested.
struct ConstraintVector {
    std::array<double, 3> xi{};
    Vec13 v = Vec13::Zero();
};

// Builds the admissible vector generated by (psi_hat, w_hat) at xi:
// phi = -i xi.psi_hat, G = i psi_hat xi^T.
ConstraintVector make_constraint_vector(const Eigen::Vector3cd& psi_hat,
                                        const Eigen::Vector3cd& w_hat,
                                        const std::array<double, 3>& xi);

// Scaled residuals of the two admissibility conditions: {trace, gradient-form},
// each relative to the vector norm (zero vector gives zeros).
std::array<double, 2> constraint_residuals(const ConstraintVector& cv);

// Dense symbol of the solution operator at one wavevector: the matrix whose action on
// any admissible vector reproduces the closed-form solution of the linearized system
// at time t. With f = Phi1/Phi2 the same block structure evaluates the exponential-
// integrator weight functions of the generator (used by the nonlinear stepper).
// At xi = 0 the matrix is f(0) * identity.
struct SemigroupSymbol {
    Mat13 mat = Mat13::Zero();
    std::array<double, 3> xi{};
    double t = 0.0;
    FluidParams params;
};
SemigroupSymbol semigroup_symbol(const FluidParams& p, const std::array<double, 3>& xi,
                                 double t, PhiFun f = PhiFun::Exp);

// Structured application of the same operator without forming the matrix
// (rank-one projector algebra; ~80 multiplies per call). Equal to
// semigroup_symbol(...).mat * v to roundoff; the grid evolvers use this path.
Vec13 apply_symbol(const FluidParams& p, const std::array<double, 3>& xi, double t,
                   PhiFun f, const Vec13& v);

// Kernel weights of one Phi function at one (|xi|, t), reusable across every
// lattice mode sharing that radius (the stepper's per-|xi| cache).
struct SymbolWeights {
    KernelTriple lam{0.0, 0.0, 0.0};
    KernelTriple mu{0.0, 0.0, 0.0};
    double f0 = 1.0; // weight at xi = 0, where the operator is f(0) * identity
};
SymbolWeights symbol_weights(const FluidParams& p, double k, double t, PhiFun f);
Vec13 apply_symbol(const FluidParams& p, const std::array<double, 3>& xi,
                   const SymbolWeights& wts, const Vec13& v);

// Fourier symbol of the linearized generator L at xi (the operator appearing as
// d/dt u + L u = 0), assembled by the i*xi substitution rule. Exposed for the oracle
// and for tests.
Mat13 generator_symbol(const FluidParams& p, const std::array<double, 3>& xi);

// Independent cross-check route: exp(-t * generator_symbol(xi)) via scaling-and-
// squaring with a Pade core (>= 10 significant digits on the dominant components).
Mat13 symbol_oracle(const FluidParams& p, const std::array<double, 3>& xi, double t);

// General dense matrix exponential used by the oracle (dynamic size so tests can
// exercise it on small closed-form cases).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A);

} // namespace viscolab
