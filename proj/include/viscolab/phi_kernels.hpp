// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "viscolab/dispersion.hpp"

namespace viscolab {

using cplx = std::complex<double>;

// Entire functions used by the exact propagator and the exponential integrator:
//   phi0(z) = e^z,  phi1(z) = (e^z - 1)/z,  phi2(z) = (e^z - 1 - z)/z^2,
// each extended by its limit at z = 0.
enum class PhiFun { Exp, Phi1, Phi2 };

cplx expm1c(cplx z);   // e^z - 1, series below |z| = 0.5
cplx phi1(cplx z);
cplx phi2(cplx z);

// First divided difference (f(x) - f(y)) / (x - y) with the confluent limit f'(x) at
// x = y. Stable for every regime that occurs on the branch curves: coalescing pairs,
// conjugate pairs, and widely separated real roots with huge negative parts. Uses the
// exact reductions
//   dd_exp(x,y)  = e^x * expm1c(y-x)/(y-x)            (Re x >= Re y)
//   dd_phi1(x,y) = (dd_exp(x,y) - phi1(y)) / x        (|x| >= |y|)
//   dd_phi2(x,y) = (dd_phi1(x,y) - phi2(y)) / x
// and a joint complete-homogeneous series when both arguments are small, so no
// subtractive cancellation survives at any scale.
cplx dd_exp(cplx x, cplx y);
cplx dd_phi1(cplx x, cplx y);
cplx dd_phi2(cplx x, cplx y);

// (e^{a t} - e^{b t}) / (a - b), the scalar kernel of the semigroup blocks; equals
// t*e^{a t} on the diagonal a = b. (The symmetric sinhc form
// t e^{(a+b)t/2} sinhc((a-b)t/2) is this same value; the reduction above evaluates it
// without the overflow risk of cosh/sinh at large separations.)
cplx divided_diff(cplx a, cplx b, double t);

// The three scalar combinations out of which every semigroup block is built, for one
// branch pair z_pm and one function f at time t >= 0 (x = t*z+, y = t*z-):
//   K  = (f(x) - f(y)) / (z+ - z-)
//   Mm = (z+ f(y) - z- f(x)) / (z+ - z-)     ("position-like" diagonal kernel)
//   Mp = (z+ f(x) - z- f(y)) / (z+ - z-)     ("velocity-like" diagonal kernel)
// All three are real for admissible branch pairs (real pair or conjugate pair); the
// imaginary dust of the complex evaluation is discarded after a magnitude check.
struct KernelTriple {
    double K;
    double Mm;
    double Mp;
};
KernelTriple semigroup_kernels(const BranchPair& z, double t, PhiFun f);

} // namespace viscolab
