// SPDX-License-Identifier: Apache-2.0
#include "viscolab/symbol.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

#include "viscolab/dispersion.hpp"

namespace viscolab {

namespace {

constexpr cplx kI{0.0, 1.0};

double norm_of(const std::array<double, 3>& xi)
{
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

// Value of the weight function at z = 0 (limit of every kernel as xi -> 0).
double weight_at_zero(PhiFun f)
{
    switch (f) {
    case PhiFun::Exp:
    case PhiFun::Phi1: return 1.0;
    case PhiFun::Phi2: return 0.5;
    }
    return 1.0;
}

} // namespace

ConstraintVector make_constraint_vector(const Eigen::Vector3cd& psi_hat,
                                        const Eigen::Vector3cd& w_hat,
                                        const std::array<double, 3>& xi)
{
    ConstraintVector cv;
    cv.xi = xi;
    cv.v(idx_phi) = -kI * (psi_hat(0) * xi[0] + psi_hat(1) * xi[1] + psi_hat(2) * xi[2]);
    for (int j = 0; j < 3; ++j) {
        cv.v(idx_w(j)) = w_hat(j);
        for (int m = 0; m < 3; ++m)
            cv.v(idx_G(j, m)) = kI * psi_hat(j) * xi[m];
    }
    return cv;
}

std::array<double, 2> constraint_residuals(const ConstraintVector& cv)
{
    const double scale = cv.v.norm();
    if (scale == 0.0) return {0.0, 0.0};

    const cplx trace = cv.v(idx_phi) + cv.v(idx_G(0, 0)) + cv.v(idx_G(1, 1)) + cv.v(idx_G(2, 2));

    const double k = norm_of(cv.xi);
    Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
    if (k > 0.0) {
        for (int j = 0; j < 3; ++j) {
            cplx gxi = 0.0;
            for (int m = 0; m < 3; ++m) gxi += cv.v(idx_G(j, m)) * cv.xi[m];
            psi(j) = -kI * gxi / (k * k);
        }
    }
    double grad2 = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            grad2 += std::norm(cv.v(idx_G(j, m)) - kI * psi(j) * cv.xi[m]);

    return {std::abs(trace) / scale, std::sqrt(grad2) / scale};
}

SemigroupSymbol semigroup_symbol(const FluidParams& p, const std::array<double, 3>& xi,
                                 double t, PhiFun f)
{
    SemigroupSymbol out;
    out.xi = xi;
    out.t = t;
    out.params = p;

    const double k = norm_of(xi);
    if (k == 0.0) {
        out.mat = weight_at_zero(f) * Mat13::Identity();
        return out;
    }

    const KernelTriple kl = semigroup_kernels(lambda_pm(p, k), t, f);
    const KernelTriple km = semigroup_kernels(mu_pm(p, k), t, f);

    const double xh[3] = {xi[0] / k, xi[1] / k, xi[2] / k};
    double P[3][3], Q[3][3];
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Q[a][b] = xh[a] * xh[b];
            P[a][b] = (a == b ? 1.0 : 0.0) - Q[a][b];
        }

    Mat13& S = out.mat;
    S(idx_phi, idx_phi) = km.Mm;
    for (int l = 0; l < 3; ++l)
        S(idx_phi, idx_w(l)) = -kI * km.K * xi[l];

    for (int j = 0; j < 3; ++j) {
        S(idx_w(j), idx_phi) = -kI * p.gamma2() * km.K * xi[j];
        for (int l = 0; l < 3; ++l) {
            S(idx_w(j), idx_w(l)) = kl.Mp * P[j][l] + km.Mp * Q[j][l];
            const double mix = kl.K * P[j][l] + km.K * Q[j][l];
            for (int m = 0; m < 3; ++m)
                S(idx_w(j), idx_G(l, m)) = kI * p.beta2() * mix * xi[m];
        }
    }

    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            const double mix = kl.K * P[j][l] + km.K * Q[j][l];
            const double mm = kl.Mm * P[j][l] + km.Mm * Q[j][l];
            for (int m = 0; m < 3; ++m) {
                S(idx_G(j, m), idx_w(l)) = kI * mix * xi[m];
                S(idx_G(j, m), idx_G(l, m)) = mm;
            }
        }

    return out;
}

Vec13 apply_symbol(const FluidParams& p, const std::array<double, 3>& xi, double t,
                   PhiFun f, const Vec13& v)
{
    return apply_symbol(p, xi, symbol_weights(p, norm_of(xi), t, f), v);
}

SymbolWeights symbol_weights(const FluidParams& p, double k, double t, PhiFun f)
{
    SymbolWeights w;
    w.f0 = weight_at_zero(f);
    if (k > 0.0) {
        w.lam = semigroup_kernels(lambda_pm(p, k), t, f);
        w.mu = semigroup_kernels(mu_pm(p, k), t, f);
    }
    return w;
}

Vec13 apply_symbol(const FluidParams& p, const std::array<double, 3>& xi,
                   const SymbolWeights& wts, const Vec13& v)
{
    const double k = norm_of(xi);
    if (k == 0.0) return wts.f0 * v;

    const KernelTriple& kl = wts.lam;
    const KernelTriple& km = wts.mu;
    const double xh[3] = {xi[0] / k, xi[1] / k, xi[2] / k};

    const cplx phi = v(idx_phi);
    cplx w[3], G[3][3];
    for (int j = 0; j < 3; ++j) {
        w[j] = v(idx_w(j));
        for (int m = 0; m < 3; ++m) G[j][m] = v(idx_G(j, m));
    }

    cplx xw = 0.0; // xi_hat . w
    for (int j = 0; j < 3; ++j) xw += xh[j] * w[j];
    cplx gxi[3]; // (G xi_hat)_j and its longitudinal part
    cplx xgx = 0.0;
    for (int j = 0; j < 3; ++j) {
        gxi[j] = 0.0;
        for (int m = 0; m < 3; ++m) gxi[j] += G[j][m] * xh[m];
        xgx += xh[j] * gxi[j];
    }
    cplx xtg[3]; // row vector xi_hat^T G
    for (int m = 0; m < 3; ++m) {
        xtg[m] = 0.0;
        for (int j = 0; j < 3; ++j) xtg[m] += xh[j] * G[j][m];
    }

    Vec13 out;
    out(idx_phi) = km.Mm * phi - kI * km.K * (k * xw);
    for (int j = 0; j < 3; ++j) {
        const cplx wP = w[j] - xh[j] * xw;
        const cplx gP = gxi[j] - xh[j] * xgx;
        out(idx_w(j)) = -kI * p.gamma2() * km.K * phi * xi[j] + kl.Mp * wP + km.Mp * xh[j] * xw +
                        kI * p.beta2() * k * (kl.K * gP + km.K * xh[j] * xgx);
        const cplx mixw = kl.K * wP + km.K * xh[j] * xw;
        for (int m = 0; m < 3; ++m) {
            const cplx GP = G[j][m] - xh[j] * xtg[m];
            out(idx_G(j, m)) = kI * mixw * xi[m] + kl.Mm * GP + km.Mm * xh[j] * xtg[m];
        }
    }
    return out;
}

Mat13 generator_symbol(const FluidParams& p, const std::array<double, 3>& xi)
{
    Mat13 L = Mat13::Zero();
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    for (int l = 0; l < 3; ++l)
        L(idx_phi, idx_w(l)) = kI * xi[l];
    for (int j = 0; j < 3; ++j) {
        L(idx_w(j), idx_phi) = kI * p.gamma2() * xi[j];
        for (int l = 0; l < 3; ++l)
            L(idx_w(j), idx_w(l)) = p.nu * k2 * (j == l ? 1.0 : 0.0) + p.nu_tilde() * xi[j] * xi[l];
        for (int m = 0; m < 3; ++m) {
            L(idx_w(j), idx_G(j, m)) = -kI * p.beta2() * xi[m];
            L(idx_G(j, m), idx_w(j)) = -kI * xi[m];
        }
    }
    return L;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A)
{
    // Scaling-and-squaring with the order-13 Pade approximant (theta_13 = 5.37...).
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("expm: matrix must be square");

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

    const Eigen::MatrixXcd As = A / std::pow(2.0, s);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd A2 = As * As;
    const Eigen::MatrixXcd A4 = A2 * A2;
    const Eigen::MatrixXcd A6 = A2 * A4;

    const Eigen::MatrixXcd U =
        As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
              b[1] * I);
    const Eigen::MatrixXcd V =
        A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Eigen::MatrixXcd F = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < s; ++i) F = F * F;
    return F;
}

Mat13 symbol_oracle(const FluidParams& p, const std::array<double, 3>& xi, double t)
{
    if (t < 0.0) throw std::invalid_argument("symbol_oracle: negative time");
    const Eigen::MatrixXcd E = expm(-t * Eigen::MatrixXcd(generator_symbol(p, xi)));
    return Mat13(E);
}

} // namespace viscolab
