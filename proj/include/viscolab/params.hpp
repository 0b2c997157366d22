// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace viscolab {

// Nondimensional material parameters about the rest state (rho, v, F) = (1, 0, I).
// beta is the elastic shear wave speed, gamma the sound speed; the longitudinal
// family propagates at sqrt(beta^2 + gamma^2).
struct FluidParams {
    double nu = 1.0;       // shear viscosity, > 0
    double nu_prime = 0.0; // second viscosity, 2 nu + 3 nu_prime >= 0
    double beta = 1.0;     // elastic wave speed, > 0
    double gamma = 1.0;    // sound speed, > 0
    double pressure_quadratic = 0.0; // optional quadratic pressure remainder coefficient

    double nu_tilde() const { return nu + nu_prime; }
    double nu_hat() const { return nu + nu_tilde(); } // 2 nu + nu_prime
    double beta2() const { return beta * beta; }
    double gamma2() const { return gamma * gamma; }
    double wave_speed_shear() const { return beta; }
    double wave_speed_long() const { return std::sqrt(beta2() + gamma2()); }
};

// Validated constructor; throws std::invalid_argument naming the violated
// inequality (nu > 0, 2nu+3nu' >= 0, beta > 0, gamma > 0).
FluidParams make_params(double nu, double nu_prime, double beta, double gamma,
                        double pressure_quadratic = 0.0);

// The (1, 0, 1, 1) reference point used by most experiments.
FluidParams unit_params();

} // namespace viscolab
