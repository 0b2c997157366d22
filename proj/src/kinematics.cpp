// SPDX-License-Identifier: Apache-2.0
#include "viscolab/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "viscolab/errors.hpp"

namespace viscolab {

namespace {

Eigen::Matrix3d load3(const TensorField& T, size_t i)
{
    Eigen::Matrix3d A;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) A(j, k) = T[static_cast<size_t>(3 * j + k)][i];
    return A;
}

void store3(TensorField& T, size_t i, const Eigen::Matrix3d& A)
{
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) T[static_cast<size_t>(3 * j + k)][i] = A(j, k);
}

Eigen::Matrix3d invert_guarded(const Eigen::Matrix3d& B, const char* where)
{
    const Eigen::Matrix3d inv = B.inverse();
    if (!inv.allFinite() || B.norm() * inv.norm() > 1e6)
        throw RegimeError(std::string(where) + ": near-singular matrix (condition > 1e6)");
    return inv;
}

} // namespace

double det_expansion(const Eigen::Matrix3d& A)
{
    const double tr = A.trace();
    const double tr2 = (A * A).trace();
    return 1.0 + tr + 0.5 * (tr * tr - tr2) + A.determinant();
}

TensorField gradpsi_to_G(const TensorField& gradpsi)
{
    TensorField G = gradpsi;
    const size_t n = gradpsi[0].size();
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d inv = invert_guarded(I - load3(gradpsi, i), "gradpsi_to_G");
        store3(G, i, inv - I);
    }
    return G;
}

TensorField G_to_gradpsi(const TensorField& G)
{
    TensorField gp = G;
    const size_t n = G[0].size();
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d inv = invert_guarded(I + load3(G, i), "G_to_gradpsi");
        store3(gp, i, I - inv);
    }
    return gp;
}

RealField phi_from_gradpsi(const TensorField& gradpsi)
{
    const size_t n = gradpsi[0].size();
    RealField phi(n);
    for (size_t i = 0; i < n; ++i) phi[i] = det_expansion(-load3(gradpsi, i)) - 1.0;
    return phi;
}

TensorField h_remainder(const TensorField& gradpsi)
{
    TensorField h = gradpsi;
    const size_t n = gradpsi[0].size();
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d A = load3(gradpsi, i);
        const Eigen::Matrix3d inv = invert_guarded(I - A, "h_remainder");
        store3(h, i, inv - I - A);
    }
    return h;
}

ConstraintResiduals constraint_residuals(Transformer& tr, const RealField& rho,
                                         const VectorField& v, const TensorField& F)
{
    (void)v; // the velocity does not enter the static invariants
    const Grid& g = tr.grid();
    const size_t n = rho.size();
    ConstraintResiduals out;

    RealField det_res(n);
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d Fi = load3(F, i);
        det_res[i] = std::abs(rho[i] * Fi.determinant() - 1.0);
    }

    // dF[m][j][k] = d_m F_jk: gradient of every deformation component.
    std::array<TensorField, 3> dF;
    {
        SpecField fh, dh;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                tr.forward(F[static_cast<size_t>(3 * j + k)], fh);
                for (int m = 0; m < 3; ++m) {
                    apply_derivative(g, fh, m, dh);
                    tr.inverse(dh, dF[static_cast<size_t>(m)][static_cast<size_t>(3 * j + k)]);
                }
            }
    }

    RealField piola_res(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d Fi = load3(F, i);
        double worst = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l) {
                    double r = 0.0;
                    for (int m = 0; m < 3; ++m)
                        r += Fi(m, l) * dF[static_cast<size_t>(m)][static_cast<size_t>(3 * j + k)][i] -
                             Fi(m, k) * dF[static_cast<size_t>(m)][static_cast<size_t>(3 * j + l)][i];
                    worst = std::max(worst, std::abs(r));
                }
        piola_res[i] = worst;
    }

    // (div rho F^T)_j = d_m (rho F_mj).
    TensorField M = F;
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            for (size_t i = 0; i < n; ++i)
                M[static_cast<size_t>(3 * j + m)][i] = rho[i] * F[static_cast<size_t>(3 * m + j)][i];
    const VectorField divM = divergence_tensor(tr, M);
    RealField div_res(n);
    for (size_t i = 0; i < n; ++i)
        div_res[i] = std::sqrt(divM[0][i] * divM[0][i] + divM[1][i] * divM[1][i] +
                               divM[2][i] * divM[2][i]);

    auto summarize = [&g](const RealField& f) {
        ResidualSummary s;
        s.linf = linf_norm(f);
        s.l2 = lp_norm(g, f, 2.0);
        return s;
    };
    out.r_det = summarize(det_res);
    out.r_piola = summarize(piola_res);
    out.r_div = summarize(div_res);
    return out;
}

InitialData build_initial_data(Transformer& tr, const VectorField& psi0, const VectorField& v0)
{
    const TensorField gradpsi = jacobian(tr, psi0);
    double amax = 0.0;
    for (const RealField& c : gradpsi)
        for (double x : c) amax = std::max(amax, std::abs(x));
    if (amax > 0.5)
        throw RegimeError("build_initial_data: grad psi exceeds the small-perturbation regime");

    InitialData d;
    d.v = v0;
    const size_t n = psi0[0].size();
    d.rho.resize(n);
    d.F = gradpsi;
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Matrix3d B = I - load3(gradpsi, i);
        const Eigen::Matrix3d F = invert_guarded(B, "build_initial_data");
        store3(d.F, i, F);
        d.rho[i] = B.determinant();
    }
    d.residuals = constraint_residuals(tr, d.rho, d.v, d.F);
    return d;
}

LowfreqCheck lowfreq_condition_check(const RadialInitialSamples& s, double r, double c0,
                                     double c1, double eta0)
{
    if (!(r > 0.0) || !(c0 > 0.0) || !(c1 > 0.0) || !(eta0 > 0.0))
        throw std::invalid_argument("lowfreq_condition_check: r, c0, c1, eta0 must be positive");

    LowfreqCheck out;
    double phi_margin = std::numeric_limits<double>::infinity();
    double grad_margin = std::numeric_limits<double>::infinity();
    bool any = false;
    for (size_t i = 0; i < s.k.size(); ++i) {
        if (s.k[i] > r) continue;
        any = true;
        phi_margin = std::min(phi_margin, std::abs(s.phi_hat[i]) - c0);
        grad_margin = std::min(grad_margin,
                               c1 * std::pow(s.k[i], eta0) - (s.m_mag[i] + s.skew_mag[i]));
    }
    if (!any) throw std::invalid_argument("lowfreq_condition_check: no samples inside |xi| <= r");
    out.phi_margin = phi_margin;
    out.grad_margin = grad_margin;
    out.phi_clause = phi_margin > 0.0;
    out.grad_clause = grad_margin >= 0.0;
    out.pass = out.phi_clause && out.grad_clause;
    return out;
}

} // namespace viscolab
