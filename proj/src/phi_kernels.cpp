// SPDX-License-Identifier: Apache-2.0
#include "viscolab/phi_kernels.hpp"

#include <cassert>
#include <cmath>

namespace viscolab {

namespace {

constexpr double kSmall = 0.6;   // joint-series radius
constexpr int kTerms = 26;       // series length; term_n <= n*0.6^n/n! is < 1e-18 by n=26

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// sum_{n>=1} h_{n-1}(x, y) / (n + shift)! where h_k is the complete homogeneous
// symmetric polynomial; this is the divided difference of phi_shift when both
// arguments are small. shift = 0 covers exp.
cplx dd_series(cplx x, cplx y, int shift) {
    cplx h = 1.0;      // h_0
    cplx ypow = 1.0;   // y^{n-1}
    cplx sum = 0.0;
    for (int n = 1; n <= kTerms; ++n) {
        sum += h / factorial(n + shift);
        ypow *= y;
        h = x * h + ypow;  // h_n = x h_{n-1} + y^n
    }
    return sum;
}

bool both_small(cplx x, cplx y) { return std::abs(x) < kSmall && std::abs(y) < kSmall; }

} // namespace

cplx expm1c(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = z;
        cplx sum = z;
        for (int n = 2; n <= kTerms; ++n) {
            term *= z / double(n);
            sum += term;
        }
        return sum;
    }
    return std::exp(z) - 1.0;
}

cplx phi1(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = 1.0;
        cplx sum = 1.0;
        for (int n = 1; n <= kTerms; ++n) {
            term *= z / double(n + 1);
            sum += term;
        }
        return sum;
    }
    return expm1c(z) / z;
}

cplx phi2(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = 0.5;
        cplx sum = 0.5;
        for (int n = 1; n <= kTerms; ++n) {
            term *= z / double(n + 2);
            sum += term;
        }
        return sum;
    }
    return (phi1(z) - 1.0) / z;
}

cplx dd_exp(cplx x, cplx y) {
    if (both_small(x, y)) return dd_series(x, y, 0);
    if (x.real() < y.real()) std::swap(x, y);
    const cplx w = y - x;  // Re w <= 0, so |expm1c(w)| <= 2: no overflow path
    if (w == cplx(0.0)) return std::exp(x);
    return std::exp(x) * expm1c(w) / w;
}

cplx dd_phi1(cplx x, cplx y) {
    if (both_small(x, y)) return dd_series(x, y, 1);
    if (std::abs(x) < std::abs(y)) std::swap(x, y);  // divide by the larger argument
    return (dd_exp(x, y) - phi1(y)) / x;
}

cplx dd_phi2(cplx x, cplx y) {
    if (both_small(x, y)) return dd_series(x, y, 2);
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    return (dd_phi1(x, y) - phi2(y)) / x;
}

cplx divided_diff(cplx a, cplx b, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("divided_diff: requires t >= 0");
    return t * dd_exp(a * t, b * t);
}

KernelTriple semigroup_kernels(const BranchPair& z, double t, PhiFun f) {
    if (!(t >= 0.0)) throw std::invalid_argument("semigroup_kernels: requires t >= 0");
    const cplx x = z.plus * t;
    const cplx y = z.minus * t;
    cplx fx, fy, dd;
    switch (f) {
        case PhiFun::Exp:
            fx = std::exp(x);
            fy = std::exp(y);
            dd = dd_exp(x, y);
            break;
        case PhiFun::Phi1:
            fx = phi1(x);
            fy = phi1(y);
            dd = dd_phi1(x, y);
            break;
        case PhiFun::Phi2:
            fx = phi2(x);
            fy = phi2(y);
            dd = dd_phi2(x, y);
            break;
    }
    const cplx K = t * dd;                          // (f(x)-f(y))/(z+ - z-)
    const cplx S = 0.5 * (fx + fy);
    const cplx half_trace = 0.5 * (z.plus + z.minus);
    const cplx Mm = S - half_trace * K;
    const cplx Mp = S + half_trace * K;
    // Admissible pairs (real or conjugate) make all three real; anything beyond
    // roundoff dust indicates a caller bug.
    assert(std::abs(K.imag()) <= 1e-10 * (1.0 + std::abs(K.real())));
    assert(std::abs(Mm.imag()) <= 1e-10 * (1.0 + std::abs(Mm.real())));
    return {K.real(), Mm.real(), Mp.real()};
}

} // namespace viscolab
