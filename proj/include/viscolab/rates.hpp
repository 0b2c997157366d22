// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace viscolab {

// Least-squares rate fit of a norm time series. Power-law fits regress
// log v against log(1+t) (the (1+t)^alpha normal form); exponential fits
// regress log v against t. local_t/local_slope hold the slopes of sliding
// half-decade (in 1+t) windows over the whole series, the stabilization
// diagnostic behind the onset-time estimate.
struct RateFit {
    double exponent = 0.0;
    double prefactor = 0.0; // value of the fit at t = 0, exp(intercept)
    double t_lo = 0.0;
    double t_hi = 0.0;
    double rms = 0.0; // rms residual of log v over the window
    double r2 = 1.0;
    std::vector<double> local_t;
    std::vector<double> local_slope;
};

// Window overloads fit samples with t in [t_lo, t_hi]; the two-argument forms
// use the final decade, [t_max/10, t_max]. Throws std::invalid_argument when the
// window holds fewer than 8 samples or any windowed value is not positive.
RateFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                      double t_hi);
RateFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v);
RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                        double t_hi);
RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& v);

// Earliest local-window center after which every later local slope stays within
// tol of the fitted exponent; +infinity when the series never settles.
double stabilization_time(const RateFit& f, double tol);

// Quadrature check of the convolution bound
//   I(t) = int_0^t (1+t-s)^{1/2} (1+s)^{-2} ds <= C (1+t)^{1/2}:
// returns the ratio profile I(t)/(1+t)^{1/2} on a log-spaced grid up to t_max
// (plus t = 0) and its supremum. The substitution s = e^y - 1 equidistributes
// the integrand mass, so a fixed node budget covers all magnitudes of t.
struct DuhamelCheck {
    double sup_ratio = 0.0;
    double ratio_at_tmax = 0.0;
    std::vector<double> t;
    std::vector<double> ratio;
};
DuhamelCheck duhamel_bound_check(double t_max, int nodes);

} // namespace viscolab
