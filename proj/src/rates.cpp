// SPDX-License-Identifier: Apache-2.0
#include "viscolab/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "viscolab/radial.hpp"

namespace viscolab {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    double r2 = 1.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    f.rms = std::sqrt(ss_res / n);
    f.r2 = ss_tot > 1e-28 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-28 ? 1.0 : 0.0);
    return f;
}

RateFit fit_core(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                 double t_hi, bool power_law, const char* name)
{
    if (t.size() != v.size())
        throw std::invalid_argument(std::string(name) + ": times and values differ in length");

    std::vector<double> x, y;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(v[i] > 0.0))
            throw std::invalid_argument(std::string(name) + ": nonpositive value at t = " +
                                        std::to_string(t[i]));
        x.push_back(power_law ? std::log1p(t[i]) : t[i]);
        y.push_back(std::log(v[i]));
    }
    if (x.size() < 8)
        throw std::invalid_argument(std::string(name) + ": fewer than 8 samples in window [" +
                                    std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");

    const LineFit lf = least_squares(x, y);
    RateFit out;
    out.exponent = lf.slope;
    out.prefactor = std::exp(lf.intercept);
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.rms = lf.rms;
    out.r2 = lf.r2;

    // sliding half-decade windows in 1 + t over the whole positive series
    const double span = std::sqrt(10.0);
    for (size_t i = 0; i < t.size(); ++i) {
        std::vector<double> xs, ys;
        double hi_t = t[i];
        for (size_t j = i; j < t.size(); ++j) {
            if (1.0 + t[j] > span * (1.0 + t[i])) break;
            if (!(v[j] > 0.0)) continue;
            xs.push_back(power_law ? std::log1p(t[j]) : t[j]);
            ys.push_back(std::log(v[j]));
            hi_t = t[j];
        }
        if (xs.size() < 4 || xs.back() <= xs.front()) continue;
        out.local_t.push_back(std::sqrt((1.0 + t[i]) * (1.0 + hi_t)) - 1.0);
        out.local_slope.push_back(least_squares(xs, ys).slope);
    }
    return out;
}

double final_t(const std::vector<double>& t, const char* name)
{
    if (t.empty()) throw std::invalid_argument(std::string(name) + ": empty series");
    double m = t[0];
    for (double x : t) m = std::max(m, x);
    return m;
}

} // namespace

RateFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                      double t_hi)
{
    return fit_core(t, v, t_lo, t_hi, true, "fit_power_law");
}

RateFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v)
{
    const double tm = final_t(t, "fit_power_law");
    return fit_power_law(t, v, tm / 10.0, tm);
}

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                        double t_hi)
{
    return fit_core(t, v, t_lo, t_hi, false, "fit_exponential");
}

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& v)
{
    const double tm = final_t(t, "fit_exponential");
    return fit_exponential(t, v, tm / 10.0, tm);
}

double stabilization_time(const RateFit& f, double tol)
{
    if (f.local_t.empty()) return std::numeric_limits<double>::infinity();
    size_t first = f.local_t.size();
    for (size_t i = f.local_t.size(); i-- > 0;) {
        if (std::abs(f.local_slope[i] - f.exponent) > tol) break;
        first = i;
    }
    if (first == f.local_t.size()) return std::numeric_limits<double>::infinity();
    return f.local_t[first];
}

namespace {

// I(t) with s = e^y - 1: the integrand (t + 2 - e^y)^{1/2} e^{-y} is smooth on
// [0, log(1+t)] (the radicand is exactly 1 at the upper end).
double duhamel_integral(double t, int panels, const GaussLegendre& gl)
{
    const double Y = std::log1p(t);
    if (Y <= 0.0) return 0.0;
    const double hw = Y / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = p * hw;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            const double y = a + 0.5 * hw * (gl.nodes[q] + 1.0);
            acc += 0.5 * hw * gl.weights[q] * std::sqrt(t + 2.0 - std::exp(y)) * std::exp(-y);
        }
    }
    return acc;
}

} // namespace

DuhamelCheck duhamel_bound_check(double t_max, int nodes)
{
    const GaussLegendre gl = gauss_legendre(16);
    const int panels = std::max(1, nodes / 16);

    DuhamelCheck out;
    out.t.push_back(0.0);
    out.ratio.push_back(0.0);
    const int pts = 80;
    const double lo = 1e-2;
    for (int i = 0; i <= pts; ++i) {
        const double tt = lo * std::pow(t_max / lo, static_cast<double>(i) / pts);
        out.t.push_back(tt);
        out.ratio.push_back(duhamel_integral(tt, panels, gl) / std::sqrt(1.0 + tt));
    }
    for (double r : out.ratio) out.sup_ratio = std::max(out.sup_ratio, r);
    out.ratio_at_tmax = out.ratio.back();
    return out;
}

} // namespace viscolab
