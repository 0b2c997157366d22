// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "viscolab/errors.hpp"
#include "viscolab/kinematics.hpp"
#include "viscolab/nonlinear.hpp"

using namespace viscolab;

namespace {

RealField trig_field(const Grid& g, const std::function<double(double, double, double)>& f)
{
    RealField u = zero_field(g);
    for (int i0 = 0; i0 < g.N; ++i0)
        for (int i1 = 0; i1 < g.N; ++i1)
            for (int i2 = 0; i2 < g.N; ++i2)
                u[static_cast<size_t>(g.ridx(i0, i1, i2))] = f(g.x(i0), g.x(i1), g.x(i2));
    return u;
}

double max_abs_diff(const RealField& a, const RealField& b)
{
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// band-limited noise: white spectrum under a Gaussian envelope, Hermitian by
// construction (forward transform of real noise)
RealField smooth_noise(Transformer& tr, uint32_t seed)
{
    const Grid& g = tr.grid();
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    RealField u = zero_field(g);
    for (double& x : u) x = dist(rng);
    SpecField uh;
    tr.forward(u, uh);
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const auto k = g.wavevector(j0, j1, j2);
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                uh[static_cast<size_t>(g.sidx(j0, j1, j2))] *= std::exp(-k2 / 4.0);
            }
    dealias_23(g, uh);
    tr.inverse(uh, u);
    return u;
}

void rescale_max(std::array<RealField, 3>& v, double target)
{
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, linf_norm(c));
    for (auto& c : v)
        for (double& x : c) x *= target / m;
}

// the single-frequency potential used for the consistency tests: Neumann tails
// decay geometrically, so spectral identities hold to roundoff
VectorField test_potential(const Grid& g)
{
    VectorField psi;
    psi[0] = trig_field(g, [](double x, double y, double) { return 0.06 * std::sin(x) * std::cos(y); });
    psi[1] = trig_field(g, [](double, double y, double z) { return 0.05 * std::sin(y) * std::sin(z); });
    psi[2] = trig_field(g, [](double x, double, double z) { return 0.04 * std::cos(x) * std::sin(z); });
    return psi;
}

PerturbationState state_from(const Grid& g, const TensorField& gradpsi, const VectorField& w)
{
    PerturbationState u;
    u.grid = g;
    u.phi = phi_from_gradpsi(gradpsi);
    u.w = w;
    u.G = gradpsi_to_G(gradpsi);
    return u;
}

} // namespace

TEST_CASE("displacement forcing keeps N1 + tr N3 at roundoff")
{
    const Grid g = make_grid(16, M_PI);
    Transformer tr(g);
    for (uint32_t seed : {11u, 12u, 13u, 14u, 15u}) {
        VectorField psi{smooth_noise(tr, seed), smooth_noise(tr, seed + 100),
                        smooth_noise(tr, seed + 200)};
        VectorField w{smooth_noise(tr, seed + 300), smooth_noise(tr, seed + 400),
                      smooth_noise(tr, seed + 500)};
        rescale_max(w, 0.2);
        TensorField gradpsi = jacobian(tr, psi);
        double m = 0.0;
        for (const auto& c : gradpsi) m = std::max(m, linf_norm(c));
        for (auto& c : psi)
            for (double& x : c) x *= 0.1 / m;
        gradpsi = jacobian(tr, psi);

        const PerturbationState u = state_from(g, gradpsi, w);
        const NonlinearTerms N = N_terms(tr, w, gradpsi, u, unit_params());

        double worst = 0.0;
        for (size_t i = 0; i < N.N1.size(); ++i)
            worst = std::max(worst, std::abs(N.N1[i] + N.N3[0][i] + N.N3[4][i] + N.N3[8][i]));
        CHECK(worst <= 1e-12 * linf_norm(N.N1));
    }
}

TEST_CASE("pure-velocity forcing reduces to the convection term")
{
    const Grid g = make_grid(16, M_PI);
    Transformer tr(g);
    const double a = 0.7, b = 0.4;

    PerturbationState u = zero_state(g);
    u.w[0] = trig_field(g, [=](double, double y, double) { return a * std::sin(y); });
    u.w[1] = trig_field(g, [=](double x, double, double) { return b * std::cos(x); });

    // with phi = 0 and G = 0 only -(w . grad) w survives
    const VectorField g2 = g2_term(tr, u, unit_params());
    const RealField e0 =
        trig_field(g, [=](double x, double y, double) { return -a * b * std::cos(x) * std::cos(y); });
    const RealField e1 =
        trig_field(g, [=](double x, double y, double) { return a * b * std::sin(x) * std::sin(y); });
    CHECK(max_abs_diff(g2[0], e0) <= 1e-12);
    CHECK(max_abs_diff(g2[1], e1) <= 1e-12);
    CHECK(linf_norm(g2[2]) <= 1e-12);
}

TEST_CASE("density and deformation forcings on single-mode data")
{
    const Grid g = make_grid(16, M_PI);
    Transformer tr(g);
    const double c = 0.3, d = 0.8, e = 0.5, f = 0.6;

    PerturbationState u = zero_state(g);
    u.phi = trig_field(g, [=](double, double, double z) { return c * std::cos(z); });
    u.w[2] = trig_field(g, [=](double, double, double z) { return d * std::sin(z); });
    u.w[0] = trig_field(g, [=](double x, double, double) { return f * std::sin(x); });
    u.G[1] = trig_field(g, [=](double x, double, double) { return e * std::cos(x); });

    const GTerms G = g_terms(tr, u, unit_params());

    // g1 = -div(phi w); the z-channel gives -c d cos(2z), the x-channel -c f d(sin x cos z)/dx
    const RealField e1 = trig_field(g, [=](double x, double, double z) {
        return -c * d * std::cos(2.0 * z) - c * f * std::cos(x) * std::cos(z);
    });
    CHECK(max_abs_diff(G.g1, e1) <= 1e-12);

    // g3 = (grad w) G - (w . grad) G; for G_01 = e cos x, w_0 = f sin x the two
    // halves sum to the constant e f
    for (int jc = 0; jc < 9; ++jc) {
        if (jc == 1) continue;
        CHECK(linf_norm(G.g3[static_cast<size_t>(jc)]) <= 1e-12);
    }
    RealField ef = u.phi;
    for (double& v : ef) v = e * f;
    CHECK(max_abs_diff(G.g3[1], ef) <= 1e-12);
}

TEST_CASE("constraint row closes on kinematically consistent fields")
{
    const Grid g = make_grid(32, M_PI);
    Transformer tr(g);
    const VectorField psi = test_potential(g);
    const TensorField gradpsi = jacobian(tr, psi);
    VectorField w;
    w[0] = trig_field(g, [](double, double y, double) { return 0.2 * std::cos(y); });
    w[1] = trig_field(g, [](double, double, double z) { return 0.1 * std::sin(z); });
    w[2] = trig_field(g, [](double x, double, double) { return 0.15 * std::sin(x); });
    const PerturbationState u = state_from(g, gradpsi, w);

    const GTerms G = g_terms(tr, u, unit_params());
    const VectorField dphi = gradient(tr, u.phi);
    TensorField GT;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) GT[static_cast<size_t>(3 * j + k)] = u.G[static_cast<size_t>(3 * k + j)];
    const VectorField divGT = divergence_tensor(tr, GT);

    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        double worst = 0.0;
        for (size_t i = 0; i < dphi[sj].size(); ++i)
            worst = std::max(worst, std::abs(dphi[sj][i] + divGT[sj][i] - G.g4[sj][i]));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("both formulations force the velocity identically")
{
    const Grid g = make_grid(32, M_PI);
    Transformer tr(g);
    const FluidParams p = make_params(0.7, 0.2, 1.3, 0.9, 0.5);

    const VectorField psi = test_potential(g);
    const TensorField gradpsi = jacobian(tr, psi);
    VectorField w;
    w[0] = trig_field(g, [](double, double y, double) { return 0.2 * std::cos(y); });
    w[1] = trig_field(g, [](double, double, double z) { return 0.1 * std::sin(z); });
    w[2] = trig_field(g, [](double x, double, double) { return 0.15 * std::sin(x); });
    const PerturbationState u = state_from(g, gradpsi, w);

    // perturbation route: -gamma^2 grad phi + beta^2 div G + g2
    const VectorField g2 = g2_term(tr, u, p);
    const VectorField dphi = gradient(tr, u.phi);
    const VectorField divG = divergence_tensor(tr, u.G);

    // displacement route: +gamma^2 grad div psi + beta^2 div grad psi + N2
    const VectorField N2 = n2_term(tr, gradpsi, u, p);
    const VectorField ddiv = gradient(tr, divergence(tr, psi));
    const VectorField lap = divergence_tensor(tr, gradpsi);

    const double b2 = p.beta2(), c2 = p.gamma2();
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        double worst = 0.0;
        for (size_t i = 0; i < g2[sj].size(); ++i) {
            const double lhs = -c2 * dphi[sj][i] + b2 * divG[sj][i] + g2[sj][i];
            const double rhs = c2 * ddiv[sj][i] + b2 * lap[sj][i] + N2[sj][i];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("displacement forcing scales quadratically with the data")
{
    const Grid g = make_grid(32, M_PI);
    Transformer tr(g);
    const VectorField psi1 = test_potential(g);
    VectorField w1;
    w1[0] = trig_field(g, [](double, double y, double) { return 0.2 * std::cos(y); });
    w1[1] = trig_field(g, [](double, double, double z) { return 0.1 * std::sin(z); });
    w1[2] = trig_field(g, [](double x, double, double) { return 0.15 * std::sin(x); });

    std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    std::vector<double> size;
    for (double ep : eps) {
        VectorField psi = psi1, w = w1;
        for (auto& c : psi)
            for (double& x : c) x *= ep;
        for (auto& c : w)
            for (double& x : c) x *= ep;
        const TensorField gradpsi = jacobian(tr, psi);
        const PerturbationState u = state_from(g, gradpsi, w);
        const NonlinearTerms N = N_terms(tr, w, gradpsi, u, unit_params());
        double m = linf_norm(N.N1);
        for (const auto& c : N.N2) m = std::max(m, linf_norm(c));
        for (const auto& c : N.N3) m = std::max(m, linf_norm(c));
        size.push_back(m);
    }
    for (size_t i = 0; i + 1 < size.size(); ++i) {
        const double slope = std::log(size[i] / size[i + 1]) / std::log(eps[i] / eps[i + 1]);
        CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("pressure remainder and its coupling into the velocity forcing")
{
    const Grid g = make_grid(16, M_PI);
    Transformer tr(g);
    const double c = 0.3;

    PerturbationState u = zero_state(g);
    u.phi = trig_field(g, [=](double x, double, double) { return c * std::cos(x); });

    const FluidParams lin = unit_params();
    const FluidParams quad = make_params(1.0, 0.0, 1.0, 1.0, 0.7);

    CHECK(linf_norm(pressure_remainder(g, u.phi, lin)) == 0.0);
    const RealField R = pressure_remainder(g, u.phi, quad);
    for (int i0 = 0; i0 < g.N; ++i0) {
        const double x = g.x(i0);
        const double expect = 0.7 * c * c * std::cos(x) * std::cos(x);
        CHECK(R[static_cast<size_t>(g.ridx(i0, 0, 0))] == doctest::Approx(expect).epsilon(1e-13));
    }

    // the two laws differ in g2 by exactly -grad R / (1 + phi)
    const VectorField a = g2_term(tr, u, lin);
    const VectorField b = g2_term(tr, u, quad);
    const VectorField dR = gradient(tr, R);
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        double worst = 0.0;
        for (size_t i = 0; i < a[sj].size(); ++i)
            worst = std::max(worst,
                             std::abs(b[sj][i] - a[sj][i] + dR[sj][i] / (1.0 + u.phi[i])));
        CHECK(worst <= 1e-13);
    }
}

TEST_CASE("vacuum guard refuses near-vacuum density")
{
    const Grid g = make_grid(8, M_PI);
    Transformer tr(g);
    PerturbationState u = zero_state(g);
    for (double& v : u.phi) v = -0.6;
    try {
        g2_term(tr, u, unit_params());
        FAIL("expected RegimeError");
    } catch (const RegimeError& e) {
        CHECK(std::string(e.what()).find("g2_term: vacuum guard tripped") == 0);
    }
}

TEST_CASE("material displacement transport")
{
    const Grid g = make_grid(16, M_PI);
    Transformer tr(g);
    const double a = 0.5, b = 0.9;
    VectorField psi{zero_field(g), zero_field(g), zero_field(g)};
    VectorField v{zero_field(g), zero_field(g), zero_field(g)};
    psi[0] = trig_field(g, [=](double, double y, double) { return a * std::sin(y); });
    v[1] = trig_field(g, [=](double, double y, double) { return b * std::cos(y); });

    const VectorField rhs = displacement_rhs(tr, psi, v);
    const RealField e0 =
        trig_field(g, [=](double, double y, double) { return -a * b * std::cos(y) * std::cos(y); });
    CHECK(max_abs_diff(rhs[0], e0) <= 1e-12);
    CHECK(max_abs_diff(rhs[1], v[1]) <= 1e-12);
    CHECK(linf_norm(rhs[2]) <= 1e-12);

    const VectorField rhs2 = displacement_rhs(g, jacobian(tr, psi), v);
    for (int j = 0; j < 3; ++j)
        CHECK(max_abs_diff(rhs[static_cast<size_t>(j)], rhs2[static_cast<size_t>(j)]) == 0.0);
}
