// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <random>

#include "viscolab/symbol.hpp"

using namespace viscolab;

namespace {

std::mt19937_64 rng(417);

Eigen::Vector3cd rand_vec3()
{
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::Vector3cd v;
    for (int i = 0; i < 3; ++i) v(i) = cplx{nd(rng), nd(rng)};
    return v;
}

ConstraintVector rand_admissible(double k)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    std::array<double, 3> dir{nd(rng), nd(rng), nd(rng)};
    const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const std::array<double, 3> xi{k * dir[0] / n, k * dir[1] / n, k * dir[2] / n};
    return make_constraint_vector(rand_vec3(), rand_vec3(), xi);
}

} // namespace

TEST_CASE("constraint vectors satisfy both admissibility conditions")
{
    for (const double k : {1e-3, 0.5, 3.0, 80.0}) {
        const ConstraintVector cv = rand_admissible(k);
        const auto r = constraint_residuals(cv);
        CHECK(r[0] <= 1e-14);
        CHECK(r[1] <= 1e-14);
        // trace and gradient structure, explicitly
        const cplx tr = cv.v(idx_G(0, 0)) + cv.v(idx_G(1, 1)) + cv.v(idx_G(2, 2));
        CHECK(std::abs(tr + cv.v(idx_phi)) <= 1e-13 * cv.v.norm());
    }
    // a generic vector is flagged
    ConstraintVector bad;
    bad.xi = {1.0, 0.0, 0.0};
    bad.v.setOnes();
    const auto r = constraint_residuals(bad);
    CHECK(std::max(r[0], r[1]) > 1e-2);
}

TEST_CASE("t = 0 is the identity and the flow composes")
{
    const FluidParams p = unit_params();
    const ConstraintVector cv = rand_admissible(0.7);

    const Vec13 v0 = apply_symbol(p, cv.xi, 0.0, PhiFun::Exp, cv.v);
    CHECK((v0 - cv.v).norm() <= 1e-14 * cv.v.norm());

    const Vec13 once = apply_symbol(p, cv.xi, 1.4, PhiFun::Exp, cv.v);
    const Vec13 step = apply_symbol(p, cv.xi, 1.1, PhiFun::Exp,
                                    apply_symbol(p, cv.xi, 0.3, PhiFun::Exp, cv.v));
    CHECK((once - step).norm() <= 1e-10 * cv.v.norm());
}

TEST_CASE("structured application matches the dense symbol and the oracle")
{
    const FluidParams p = unit_params();
    for (const double k : {1e-3, 0.5, 2.0, 5.0, 50.0}) {
        for (const double t : {0.1, 1.0, 10.0}) {
            const ConstraintVector cv = rand_admissible(k);
            const Vec13 a = apply_symbol(p, cv.xi, t, PhiFun::Exp, cv.v);
            const Vec13 b = semigroup_symbol(p, cv.xi, t).mat * cv.v;
            const Vec13 c = symbol_oracle(p, cv.xi, t) * cv.v;
            CHECK((a - b).norm() <= 1e-12 * cv.v.norm());
            CHECK((a - c).norm() <= 1e-10 * cv.v.norm());
            // the flow stays on the admissible subspace
            ConstraintVector out;
            out.xi = cv.xi;
            out.v = a;
            const auto r = constraint_residuals(out);
            CHECK(std::max(r[0], r[1]) <= 1e-11);
        }
    }
}

TEST_CASE("non-unit parameters agree with the oracle too")
{
    const FluidParams p = make_params(0.7, 0.2, 1.3, 0.9, 0.5);
    for (const double k : {0.05, 1.7, 20.0}) {
        const ConstraintVector cv = rand_admissible(k);
        const Vec13 a = apply_symbol(p, cv.xi, 2.2, PhiFun::Exp, cv.v);
        const Vec13 c = symbol_oracle(p, cv.xi, 2.2) * cv.v;
        CHECK((a - c).norm() <= 1e-10 * cv.v.norm());
    }
}

TEST_CASE("weights overload equals the direct path and handles xi = 0")
{
    const FluidParams p = unit_params();
    const ConstraintVector cv = rand_admissible(1.3);
    const double k = 1.3, t = 0.9;
    for (const PhiFun f : {PhiFun::Exp, PhiFun::Phi1, PhiFun::Phi2}) {
        const SymbolWeights w = symbol_weights(p, k, t, f);
        const Vec13 a = apply_symbol(p, cv.xi, w, cv.v);
        const Vec13 b = apply_symbol(p, cv.xi, t, f, cv.v);
        CHECK((a - b).norm() <= 1e-14 * cv.v.norm());
    }

    // xi = 0: admissible mean modes have phi = 0, G = 0; the operator is f(0) I
    ConstraintVector mean;
    mean.xi = {0.0, 0.0, 0.0};
    mean.v.setZero();
    mean.v(idx_w(0)) = cplx{0.3, -1.1};
    mean.v(idx_w(2)) = cplx{0.0, 0.4};
    const Vec13 e = apply_symbol(p, mean.xi, 5.0, PhiFun::Exp, mean.v);
    CHECK((e - mean.v).norm() <= 1e-15);
    const Vec13 h = apply_symbol(p, mean.xi, 5.0, PhiFun::Phi2, mean.v);
    CHECK((h - 0.5 * mean.v).norm() <= 1e-15);
}

TEST_CASE("generator symbol implements the stated block rows")
{
    const FluidParams p = make_params(0.8, 0.1, 1.2, 1.5);
    const std::array<double, 3> xi{0.4, -0.7, 1.1};
    const Mat13 L = generator_symbol(p, xi);
    const ConstraintVector cv = rand_admissible(1.0);
    // build the admissible vector at this xi instead
    const Eigen::Vector3cd psi = rand_vec3(), w = rand_vec3();
    const Vec13 v = make_constraint_vector(psi, w, xi).v;
    const Vec13 Lv = L * v;
    (void)cv;

    const cplx I{0.0, 1.0};
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    // phi row: i xi . w
    cplx phi_row = I * (xi[0] * v(idx_w(0)) + xi[1] * v(idx_w(1)) + xi[2] * v(idx_w(2)));
    CHECK(std::abs(Lv(idx_phi) - phi_row) <= 1e-13);
    // w row j: i gamma^2 xi_j phi + nu k^2 w_j + nu~ xi_j (xi.w) - i beta^2 (G xi)_j
    const cplx xw = xi[0] * v(idx_w(0)) + xi[1] * v(idx_w(1)) + xi[2] * v(idx_w(2));
    for (int j = 0; j < 3; ++j) {
        cplx gxi = 0.0;
        for (int m = 0; m < 3; ++m) gxi += v(idx_G(j, m)) * xi[m];
        const cplx row = I * p.gamma2() * xi[j] * v(idx_phi) + p.nu * k2 * v(idx_w(j)) +
                         p.nu_tilde() * xi[j] * xw - I * p.beta2() * gxi;
        CHECK(std::abs(Lv(idx_w(j)) - row) <= 1e-13 * std::max(1.0, std::abs(row)));
    }
    // G row (j,m): -i w_j xi_m
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(Lv(idx_G(j, m)) + I * v(idx_w(j)) * xi[m]) <= 1e-13);
}

TEST_CASE("energy is nonincreasing along the unit-parameter flow")
{
    // at beta = gamma = 1 the plain l2 norm is the energy norm
    const FluidParams p = unit_params();
    for (const double k : {0.2, 1.0, 2.0, 7.0}) {
        const ConstraintVector cv = rand_admissible(k);
        double prev = cv.v.norm();
        for (const double t : {0.3, 0.8, 1.5, 3.0, 8.0}) {
            const double cur = apply_symbol(p, cv.xi, t, PhiFun::Exp, cv.v).norm();
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("expm on closed-form cases")
{
    Eigen::MatrixXcd N(2, 2);
    N << 0.0, 1.0, 0.0, 0.0; // nilpotent
    const Eigen::MatrixXcd eN = expm(N);
    CHECK(std::abs(eN(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(eN(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(eN(1, 0)) <= 1e-15);

    const double th = 1.1;
    Eigen::MatrixXcd R(2, 2);
    R << 0.0, -th, th, 0.0; // rotation generator
    const Eigen::MatrixXcd eR = expm(R);
    CHECK(std::abs(eR(0, 0) - std::cos(th)) <= 1e-14);
    CHECK(std::abs(eR(1, 0) - std::sin(th)) <= 1e-14);

    // scaling-and-squaring regime: large norm diagonal
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    D(0, 0) = -40.0;
    D(1, 1) = cplx{-2.0, 30.0};
    D(2, 2) = 3.0;
    const Eigen::MatrixXcd eD = expm(D);
    CHECK(std::abs(eD(0, 0) - std::exp(-40.0)) <= 1e-12 * std::exp(-40.0) + 1e-300);
    CHECK(std::abs(eD(1, 1) - std::exp(cplx{-2.0, 30.0})) <= 1e-12);
    CHECK(std::abs(eD(2, 2) - std::exp(3.0)) <= 1e-12 * std::exp(3.0));

    CHECK_THROWS_AS(expm(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(symbol_oracle(unit_params(), {1.0, 0.0, 0.0}, -0.1),
                    std::invalid_argument);
}
