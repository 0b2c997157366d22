// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "viscolab/errors.hpp"
#include "viscolab/radial.hpp"

using namespace viscolab;

TEST_CASE("gauss-legendre: symmetry and polynomial exactness")
{
    for (const int n : {16, 64}) {
        const GaussLegendre q = gauss_legendre(n);
        REQUIRE(q.nodes.size() == static_cast<size_t>(n));
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += q.weights[static_cast<size_t>(i)];
            CHECK(q.nodes[static_cast<size_t>(i)] ==
                  doctest::Approx(-q.nodes[static_cast<size_t>(n - 1 - i)]).epsilon(1e-14));
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

        // degree 2n-1 exactness, spot-checked on x^20 with n = 16
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += q.weights[static_cast<size_t>(i)] *
                   std::pow(q.nodes[static_cast<size_t>(i)], 20);
        CHECK(acc == doctest::Approx(2.0 / 21.0).epsilon(1e-13));
    }
}

TEST_CASE("spherical bessel closed forms and the small-argument series")
{
    for (const double z : {0.5, 2.0, 7.0}) {
        // below |z| = 1 the implementation switches to the series, so allow a
        // few hundred ulp of truncation slack against the closed forms
        CHECK(sph_bessel(0, z) == doctest::Approx(std::sin(z) / z).epsilon(1e-12));
        CHECK(sph_bessel(1, z) ==
              doctest::Approx(std::sin(z) / (z * z) - std::cos(z) / z).epsilon(1e-12));
        CHECK(sph_bessel(2, z) ==
              doctest::Approx((3.0 / (z * z * z) - 1.0 / z) * std::sin(z) -
                              3.0 * std::cos(z) / (z * z))
                  .epsilon(1e-12));
    }
    CHECK(sph_bessel(0, 0.0) == 1.0);
    CHECK(sph_bessel(1, 0.0) == 0.0);
    CHECK(sph_bessel(2, 0.0) == 0.0);
    CHECK(sph_bessel(1, 1e-4) == doctest::Approx(1e-4 / 3.0).epsilon(1e-8));
    CHECK(sph_bessel(2, 1e-4) == doctest::Approx(1e-8 / 15.0).epsilon(1e-8));
}

TEST_CASE("radial synthesis inverts the Gaussian transform pair")
{
    // unitary pair: exp(-|x|^2/2) <-> exp(-k^2/2)
    const auto fk = [](double k) { return std::exp(-0.5 * k * k); };
    for (const double s : {0.0, 0.5, 1.7, 3.0}) {
        CHECK(synth_scalar(fk, s, 14.0, 256) ==
              doctest::Approx(std::exp(-0.5 * s * s)).epsilon(1e-9));
        // gradient field: W = k exp(-k^2/2) gives V = -s exp(-s^2/2)
        const auto Wk = [](double k) { return k * std::exp(-0.5 * k * k); };
        CHECK(synth_vector(Wk, s, 14.0, 256) ==
              doctest::Approx(-s * std::exp(-0.5 * s * s)).epsilon(1e-8));
        // hessian field: B = -k^2 exp(-k^2/2) gives deviatoric amplitude s^2 e^{-s^2/2}
        const auto Bk = [](double k) { return -k * k * std::exp(-0.5 * k * k); };
        CHECK(synth_tensor(Bk, s, 14.0, 256) ==
              doctest::Approx(s * s * std::exp(-0.5 * s * s)).epsilon(1e-7));
    }
}

TEST_CASE("monopole data: plateau, factories, t = 0 spectral map")
{
    const double ap = 0.8, aw = 0.6, sg = 1.3;
    const RadialData d = monopole_data(ap, aw, sg);
    const double s3 = sg * sg * sg;

    CHECK(1e-6 * 1e-6 * d.Psi0(1e-6) == doctest::Approx(ap * s3).epsilon(1e-9));
    CHECK(d.Theta0(0.0) == doctest::Approx(aw * s3));
    CHECK(d.Theta0(2.0) == doctest::Approx(aw * s3 * std::exp(-0.5 * sg * sg * 4.0)));

    const RadialSpectral s = radial_spectral_at(unit_params(), d, 0.0, 0.7);
    CHECK(s.Psi == doctest::Approx(d.Psi0(0.7)));
    CHECK(s.Theta == doctest::Approx(d.Theta0(0.7)));
    CHECK(s.phi_hat == doctest::Approx(0.49 * d.Psi0(0.7)));
    CHECK(s.W == doctest::Approx(0.7 * d.Theta0(0.7)));
    CHECK(s.B == doctest::Approx(-s.phi_hat));

    // the control family is mean-zero: density spectrum vanishes quadratically
    const RadialData c = gaussian_potential_data(ap, aw, sg);
    const RadialSpectral cs = radial_spectral_at(unit_params(), c, 0.0, 1e-3);
    CHECK(std::abs(cs.phi_hat) <= 2e-6 * ap * s3);
}

TEST_CASE("evaluator at t = 0 reproduces the closed-form initial profiles")
{
    const double ap = 0.5, aw = 0.3, sg = 1.0;
    const RadialData d = monopole_data(ap, aw, sg);
    const RadialEvaluator ev(unit_params(), d, 0.0);
    for (const double s : {0.3, 1.0, 2.5}) {
        const RadialProfile u = ev.profile(s, ProfileView::Evolved);
        // phi(x) = ap exp(-s^2/(2 sg^2)); w = grad of the Theta potential
        CHECK(u.phi == doctest::Approx(ap * std::exp(-0.5 * s * s / (sg * sg))).epsilon(1e-6));
        CHECK(u.V ==
              doctest::Approx(-aw * (s / (sg * sg)) * std::exp(-0.5 * s * s / (sg * sg)))
                  .epsilon(1e-6));
    }
}

TEST_CASE("physical and spectral quadratures agree (whole-space Plancherel)")
{
    // B(k -> 0) != 0 for monopole data, so the real-space tensor component has
    // an algebraic ~ s^-3 far field; the finite physical window truncates ~1e-4
    // of the L2 mass, which sets the agreement floor here.
    const RadialData d = monopole_data(1.0, 1.0, 1.0);
    for (const double t : {0.0, 5.0, 50.0}) {
        const RadialEvaluator ev(unit_params(), d, t);
        const double phys = ev.lp_norm(2.0, ProfileView::Evolved);
        const double spec = ev.spectral_l2(0);
        CHECK(phys == doctest::Approx(spec).epsilon(1e-3));
        CHECK(phys < spec); // truncation only loses mass
    }
    const RadialEvaluator ev(unit_params(), d, 1.0);
    CHECK_THROWS_AS(ev.lp_norm(0.5), std::invalid_argument);
    CHECK_THROWS_AS(radial_spectral_at(unit_params(), d, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("profile magnitude and kinematic reconstruction")
{
    CHECK(profile_magnitude({3.0, 4.0, 0.0, 0.0}) == doctest::Approx(5.0));
    // tensor a I + b xx^T has squared norm 3a^2 + 2ab + b^2
    CHECK(profile_magnitude({0.0, 0.0, 1.0, 1.0}) == doctest::Approx(std::sqrt(6.0)));

    // closed form: phi = det(I-A) - 1, tensor = (I-A)^{-1} - I, velocity shared
    const double a = 0.02, b = 0.015;
    const RadialProfile u = reconstruct_profile({-1.0, 0.01, a, b});
    CHECK(u.phi == doctest::Approx((1 - a) * (1 - a) * (1 - a - b) - 1.0).epsilon(1e-14));
    CHECK(u.V == 0.01);
    CHECK(u.a == doctest::Approx(a / (1 - a)).epsilon(1e-14));
    CHECK(u.b == doctest::Approx(b / ((1 - a) * (1 - a - b))).epsilon(1e-14));

    // second-order accuracy of the identity map at small amplitude
    CHECK(std::abs(u.a - a) <= 2.0 * a * a);
    CHECK(std::abs(u.phi + 3 * a + b) <= 2.0 * (3 * a * a + 2 * a * b));

    // near-singular I - A is refused
    CHECK_THROWS_WITH_AS(reconstruct_profile({0.0, 0.0, 1.0, 0.0}),
                         "reconstruct_profile: I - grad psi near singular", RegimeError);
    CHECK_THROWS_AS(reconstruct_profile({0.0, 0.0, 0.0, 0.85}), RegimeError);
}

TEST_CASE("late-time norms decay in every view")
{
    const RadialData d = monopole_data(1.0, 1.0, 1.0);
    const RadialEvaluator early(unit_params(), d, 10.0);
    const RadialEvaluator late(unit_params(), d, 100.0);
    CHECK(late.linf_norm(ProfileView::Evolved) < early.linf_norm(ProfileView::Evolved));
    CHECK(late.spectral_l2(0) < early.spectral_l2(0));
    CHECK(late.spectral_l2(1) < early.spectral_l2(1));
}

TEST_CASE("lowfreq samples: spherical data has no skew and a density plateau")
{
    const RadialData d = monopole_data(1.0, 1.0, 1.0);
    std::vector<double> ks;
    for (int i = 1; i <= 16; ++i) ks.push_back(0.15 * i / 16.0);
    const RadialInitialSamples s = lowfreq_samples(d, ks);
    REQUIRE(s.k.size() == ks.size());
    for (size_t i = 0; i < s.k.size(); ++i) {
        CHECK(s.skew_mag[i] <= 1e-10);
        CHECK(s.phi_hat[i] > 0.9); // near the plateau amp * sigma^3 = 1
        CHECK(s.m_mag[i] <= 2.0 * s.k[i]);
        CHECK(s.m_mag[i] >= 0.5 * s.k[i]);
    }
}
