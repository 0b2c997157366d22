// SPDX-License-Identifier: Apache-2.0
#include "viscolab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscolab {

namespace {

// Roots of z^2 + a z + b = 0 with a >= 0, b >= 0 (both ~ k^2). For positive
// discriminant the small-magnitude root comes from Vieta (z+ = b / z-) to avoid the
// classic subtractive cancellation at large k.
BranchPair solve_quadratic(double a, double b, double k, BranchFamily fam)
{
    BranchPair out;
    out.family = fam;
    const double disc = a * a - 4.0 * b;
    out.coalesced = std::abs(disc) < 1e-9 * std::max(1.0, k * k * k * k);
    if (a == 0.0 && b == 0.0) { // k = 0: double root at the origin
        out.plus = out.minus = 0.0;
        return out;
    }
    if (disc >= 0.0) {
        const double minus = 0.5 * (-a - std::sqrt(disc));
        out.minus = minus;
        out.plus = (minus != 0.0) ? b / minus : 0.0;
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        out.plus = {-0.5 * a, im};
        out.minus = {-0.5 * a, -im};
    }
    return out;
}

void coefficients(const FluidParams& p, double k, BranchFamily f, double& a, double& b)
{
    const double k2 = k * k;
    if (f == BranchFamily::Lambda) {
        a = p.nu * k2;
        b = p.beta2() * k2;
    } else {
        a = p.nu_hat() * k2;
        b = (p.beta2() + p.gamma2()) * k2;
    }
}

double family_residual(const FluidParams& p, double k, BranchFamily f)
{
    double a, b;
    coefficients(p, k, f, a, b);
    const BranchPair z = (f == BranchFamily::Lambda) ? lambda_pm(p, k) : mu_pm(p, k);
    const auto eval = [&](std::complex<double> r) { return std::abs(r * r + a * r + b); };
    return eval(z.plus) + eval(z.minus);
}

} // namespace

BranchPair lambda_pm(const FluidParams& p, double k)
{
    if (!(k >= 0.0)) throw std::invalid_argument("lambda_pm: requires k >= 0");
    double a, b;
    coefficients(p, k, BranchFamily::Lambda, a, b);
    return solve_quadratic(a, b, k, BranchFamily::Lambda);
}

BranchPair mu_pm(const FluidParams& p, double k)
{
    if (!(k >= 0.0)) throw std::invalid_argument("mu_pm: requires k >= 0");
    double a, b;
    coefficients(p, k, BranchFamily::Mu, a, b);
    return solve_quadratic(a, b, k, BranchFamily::Mu);
}

std::array<double, 2> vieta_residual(const FluidParams& p, double k)
{
    return {family_residual(p, k, BranchFamily::Lambda), family_residual(p, k, BranchFamily::Mu)};
}

double coalescence_radius(const FluidParams& p, BranchFamily f)
{
    if (f == BranchFamily::Lambda) return 2.0 * p.beta / p.nu;
    return 2.0 * p.wave_speed_long() / p.nu_hat();
}

BandThresholds band_thresholds(const FluidParams& p)
{
    const double r_lambda = p.beta / p.nu;
    const double r_mu = p.wave_speed_long() / p.nu_hat();
    return {std::min(r_lambda, r_mu), std::max(r_lambda, r_mu)};
}

} // namespace viscolab
