// SPDX-License-Identifier: Apache-2.0
#include "viscolab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace viscolab {

FluidParams make_params(double nu, double nu_prime, double beta, double gamma,
                        double pressure_quadratic)
{
    if (!std::isfinite(nu) || !std::isfinite(nu_prime) || !std::isfinite(beta) ||
        !std::isfinite(gamma) || !std::isfinite(pressure_quadratic))
        throw std::invalid_argument("make_params: arguments must be finite");
    if (!(nu > 0.0)) throw std::invalid_argument("make_params: nu must be positive");
    if (!(2.0 * nu + 3.0 * nu_prime >= 0.0))
        throw std::invalid_argument("make_params: 2nu+3nu' >= 0 violated");
    if (!(beta > 0.0)) throw std::invalid_argument("make_params: beta must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("make_params: gamma must be positive");

    FluidParams p;
    p.nu = nu;
    p.nu_prime = nu_prime;
    p.beta = beta;
    p.gamma = gamma;
    p.pressure_quadratic = pressure_quadratic;
    return p;
}

FluidParams unit_params()
{
    return make_params(1.0, 0.0, 1.0, 1.0);
}

} // namespace viscolab
