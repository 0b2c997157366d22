// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "viscolab/rates.hpp"

using namespace viscolab;

namespace {

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        t[static_cast<size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return t;
}

} // namespace

TEST_CASE("an exact power law is recovered to roundoff")
{
    const std::vector<double> t = log_grid(0.01, 100.0, 41);
    std::vector<double> v;
    for (double x : t) v.push_back(3.0 * std::sqrt(1.0 + x));

    const RateFit f = fit_power_law(t, v); // final decade [10, 100]
    CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.t_lo == doctest::Approx(10.0));
    CHECK(f.t_hi == doctest::Approx(100.0));
    CHECK(f.rms <= 1e-12);
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

    REQUIRE(!f.local_t.empty());
    for (double s : f.local_slope) CHECK(s == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(stabilization_time(f, 1e-6) == doctest::Approx(f.local_t.front()));
}

TEST_CASE("window overloads ignore samples outside the window")
{
    const std::vector<double> t = log_grid(0.01, 50.0, 41);
    std::vector<double> v;
    for (double x : t) v.push_back(3.0 * std::sqrt(1.0 + x));
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] < 1.0) v[i] *= 7.0; // corrupt early samples only

    const RateFit f = fit_power_law(t, v, 1.0, 50.0);
    CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("an exact exponential is recovered to roundoff")
{
    std::vector<double> t, v;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(0.5 * i);
        v.push_back(2.0 * std::exp(-0.3 * 0.5 * i));
    }
    const RateFit f = fit_exponential(t, v, 2.0, 20.0);
    CHECK(f.exponent == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("a constant series fits slope zero")
{
    std::vector<double> t, v;
    for (int i = 0; i <= 20; ++i) {
        t.push_back(0.5 * i);
        v.push_back(4.0);
    }
    const RateFit f = fit_power_law(t, v);
    CHECK(std::abs(f.exponent) <= 1e-13);
    CHECK(f.prefactor == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("a parabolic-decay transient converges to its asymptotic exponent")
{
    const std::vector<double> t = log_grid(0.1, 1e4, 60);
    std::vector<double> v;
    for (double x : t) v.push_back(std::pow(1.0 + x, -0.75) * (1.0 + 5.0 / (1.0 + x)));

    const RateFit f = fit_power_law(t, v); // final decade [1e3, 1e4]
    CHECK(f.exponent == doctest::Approx(-0.75).epsilon(0.01));

    // the sliding-window slopes drift early and settle late
    const double ts = stabilization_time(f, 0.02);
    CHECK(std::isfinite(ts));
    CHECK(ts > 1.0);
    CHECK(ts < 1e3);
}

TEST_CASE("multiplicative noise leaves the exponent within the expected scatter")
{
    std::mt19937 rng(2024);
    std::normal_distribution<double> noise(0.0, 0.02);
    const std::vector<double> t = log_grid(1.0, 1e3, 60);
    std::vector<double> v;
    for (double x : t) v.push_back(std::pow(1.0 + x, -2.0) * std::exp(noise(rng)));

    const RateFit f = fit_power_law(t, v);
    CHECK(f.exponent == doctest::Approx(-2.0).epsilon(0.025));
    CHECK(f.r2 > 0.99);
    CHECK(f.rms < 0.05);
}

TEST_CASE("fit rejections: short windows, nonpositive values, shape errors")
{
    const std::vector<double> t = log_grid(1.0, 100.0, 12);
    std::vector<double> v(t.size(), 1.0);

    try {
        fit_power_law(t, v, 90.0, 100.0);
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("fit_power_law: fewer than 8 samples in window") == 0);
    }

    std::vector<double> vz = v;
    vz[10] = 0.0;
    try {
        fit_power_law(t, vz);
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("nonpositive value at t =") != std::string::npos);
    }

    std::vector<double> shorter(t.begin(), t.end() - 1);
    CHECK_THROWS_AS(fit_power_law(shorter, v), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential({}, {}), std::invalid_argument);
}

TEST_CASE("stabilization diagnostics: settled, never settled, no windows")
{
    // exact law: settles at the first window center
    const std::vector<double> t = log_grid(0.1, 100.0, 40);
    std::vector<double> v;
    for (double x : t) v.push_back(std::pow(1.0 + x, -1.0));
    RateFit f = fit_power_law(t, v);
    CHECK(stabilization_time(f, 1e-8) == doctest::Approx(f.local_t.front()));

    // a final-sample glitch keeps the last window off the fit forever
    std::vector<double> vg = v;
    vg.back() *= 1.5;
    f = fit_power_law(t, vg);
    CHECK(std::isinf(stabilization_time(f, 0.01)));

    // samples a full decade apart never form a local window
    std::vector<double> ts, vs;
    for (int i = 0; i <= 8; ++i) {
        ts.push_back(std::pow(10.0, i) - 1.0);
        vs.push_back(std::pow(10.0, -i));
    }
    f = fit_power_law(ts, vs, 0.0, 1e8);
    CHECK(f.local_t.empty());
    CHECK(std::isinf(stabilization_time(f, 1.0)));
}

TEST_CASE("the convolution bound stays below one and is quadrature-stable")
{
    const DuhamelCheck d = duhamel_bound_check(1e4, 800);
    REQUIRE(d.t.size() == d.ratio.size());
    CHECK(d.t.front() == 0.0);
    CHECK(d.ratio.front() == 0.0);
    CHECK(d.sup_ratio < 1.0);
    CHECK(d.sup_ratio > 0.99);
    CHECK(d.ratio_at_tmax >= 0.995 * d.sup_ratio);

    const DuhamelCheck d2 = duhamel_bound_check(1e4, 1600);
    CHECK(std::abs(d.sup_ratio - d2.sup_ratio) <= 1e-8);

    // the ratio rises monotonically toward its plateau on the sampled grid
    for (size_t i = 1; i < d.ratio.size(); ++i) CHECK(d.ratio[i] >= d.ratio[i - 1] - 1e-9);
}
