// SPDX-License-Identifier: Apache-2.0
#include "viscolab/nonlinear.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <string>

#include "viscolab/errors.hpp"
#include "viscolab/kinematics.hpp"

namespace viscolab {

namespace {

void vacuum_guard(const RealField& phi, const char* where)
{
    double lo = std::numeric_limits<double>::infinity();
    for (double v : phi) lo = std::min(lo, 1.0 + v);
    if (!(lo >= 0.5))
        throw RegimeError(std::string(where) + ": vacuum guard tripped, min(1 + phi) = " +
                          std::to_string(lo));
}

// out = -|k|^2 * in, Nyquist planes zeroed like apply_derivative.
void apply_laplacian(const Grid& g, const SpecField& in, SpecField& out)
{
    out.resize(in.size());
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const auto k = g.wavevector(j0, j1, j2);
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                out[idx] = -k2 * in[idx];
            }
    zero_nyquist(g, out);
}

RealField field_like(const RealField& f) { return RealField(f.size(), 0.0); }

size_t tidx(int j, int k) { return static_cast<size_t>(3 * j + k); }

} // namespace

RealField pressure_remainder(const Grid& g, const RealField& phi, const FluidParams& p)
{
    RealField R = zero_field(g);
    const double q = p.pressure_quadratic;
    if (q != 0.0)
        for (size_t i = 0; i < R.size(); ++i) R[i] = q * phi[i] * phi[i];
    return R;
}

VectorField g2_term(Transformer& tr, const PerturbationState& u, const FluidParams& p)
{
    vacuum_guard(u.phi, "g2_term");
    const Grid& g = u.grid;
    const size_t n = u.phi.size();
    const double b2 = p.beta2();
    const double c2 = p.gamma2();

    const VectorField dphi = gradient(tr, u.phi);
    const VectorField divG = divergence_tensor(tr, u.G);

    // w derivatives from one forward transform per component
    std::array<SpecField, 3> wh;
    for (int j = 0; j < 3; ++j) tr.forward(u.w[static_cast<size_t>(j)], wh[static_cast<size_t>(j)]);

    SpecField tmp;
    TensorField Jw;
    VectorField lapw;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            apply_derivative(g, wh[static_cast<size_t>(j)], k, tmp);
            tr.inverse(tmp, Jw[tidx(j, k)]);
        }
        apply_laplacian(g, wh[static_cast<size_t>(j)], tmp);
        tr.inverse(tmp, lapw[static_cast<size_t>(j)]);
    }

    SpecField divw_h(static_cast<size_t>(g.n_spec()), cplx{0.0, 0.0});
    for (int m = 0; m < 3; ++m) {
        apply_derivative(g, wh[static_cast<size_t>(m)], m, tmp);
        for (size_t i = 0; i < divw_h.size(); ++i) divw_h[i] += tmp[i];
    }
    VectorField graddivw;
    for (int j = 0; j < 3; ++j) {
        apply_derivative(g, divw_h, j, tmp);
        tr.inverse(tmp, graddivw[static_cast<size_t>(j)]);
    }

    // grad of the pressure remainder (identically zero for the linear law)
    const bool with_R = p.pressure_quadratic != 0.0;
    VectorField dR;
    if (with_R) dR = gradient(tr, pressure_remainder(g, u.phi, p));

    // elastic flux S = phi G + (1 + phi) G G^T, differentiated spectrally
    TensorField S;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            RealField& s = S[tidx(j, k)];
            s = field_like(u.phi);
            for (size_t i = 0; i < n; ++i) {
                double ggt = 0.0;
                for (int m = 0; m < 3; ++m) ggt += u.G[tidx(j, m)][i] * u.G[tidx(k, m)][i];
                s[i] = u.phi[i] * u.G[tidx(j, k)][i] + (1.0 + u.phi[i]) * ggt;
            }
        }
    const VectorField divS = divergence_tensor(tr, S);

    VectorField g2;
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        RealField& out = g2[sj];
        out = field_like(u.phi);
        for (size_t i = 0; i < n; ++i) {
            double conv = 0.0;
            for (int m = 0; m < 3; ++m)
                conv += u.w[static_cast<size_t>(m)][i] * Jw[tidx(j, m)][i];
            const double one_plus = 1.0 + u.phi[i];
            const double frac = u.phi[i] / one_plus;
            double val = -conv +
                         frac * (-p.nu * lapw[sj][i] - p.nu_tilde() * graddivw[sj][i] +
                                 c2 * dphi[sj][i]) -
                         b2 * frac * divG[sj][i] + (b2 / one_plus) * divS[sj][i];
            if (with_R) val -= dR[sj][i] / one_plus;
            out[i] = val;
        }
    }
    return g2;
}

GTerms g_terms(Transformer& tr, const PerturbationState& u, const FluidParams& p)
{
    const Grid& g = u.grid;
    const size_t n = u.phi.size();

    GTerms out;
    out.g2 = g2_term(tr, u, p); // runs the vacuum guard

    VectorField phw;
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        phw[sj] = field_like(u.phi);
        for (size_t i = 0; i < n; ++i) phw[sj][i] = u.phi[i] * u.w[sj][i];
    }
    out.g1 = divergence(tr, phw);
    for (double& v : out.g1) v = -v;

    // g3 = -w.grad G + (grad w) G
    const TensorField Jw = jacobian(tr, u.w);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            RealField& t = out.g3[tidx(j, k)];
            t = field_like(u.phi);
            for (size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (int m = 0; m < 3; ++m) s += Jw[tidx(j, m)][i] * u.G[tidx(m, k)][i];
                t[i] = s;
            }
        }
    SpecField gh, tmp;
    RealField dg;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            tr.forward(u.G[tidx(j, k)], gh);
            for (int m = 0; m < 3; ++m) {
                apply_derivative(g, gh, m, tmp);
                tr.inverse(tmp, dg);
                RealField& t = out.g3[tidx(j, k)];
                for (size_t i = 0; i < n; ++i) t[i] -= u.w[static_cast<size_t>(m)][i] * dg[i];
            }
        }

    // g4 = -div(phi G^T)
    TensorField M;
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) {
            RealField& t = M[tidx(j, m)];
            t = field_like(u.phi);
            for (size_t i = 0; i < n; ++i) t[i] = u.phi[i] * u.G[tidx(m, j)][i];
        }
    out.g4 = divergence_tensor(tr, M);
    for (auto& comp : out.g4)
        for (double& v : comp) v = -v;

    return out;
}

VectorField n2_term(Transformer& tr, const TensorField& gradpsi, const PerturbationState& u,
                    const FluidParams& p)
{
    const size_t n = u.phi.size();

    // N2 = g2(u) - gamma^2 grad D + beta^2 div h, with D = e2(A) - det A: the
    // super-linear part of det(I - A) - 1 + tr A, written cancellation-free in A
    VectorField N2 = g2_term(tr, u, p);
    RealField D = field_like(u.phi);
    for (size_t i = 0; i < n; ++i) {
        Eigen::Matrix3d A;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) A(j, k) = gradpsi[tidx(j, k)][i];
        const double tr_a = A.trace();
        const double tr_a2 = (A * A).trace();
        D[i] = 0.5 * (tr_a * tr_a - tr_a2) - A.determinant();
    }
    const VectorField gradD = gradient(tr, D);
    const VectorField divh = divergence_tensor(tr, h_remainder(gradpsi));
    const double b2 = p.beta2();
    const double c2 = p.gamma2();
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        for (size_t i = 0; i < n; ++i) N2[sj][i] += -c2 * gradD[sj][i] + b2 * divh[sj][i];
    }
    return N2;
}

NonlinearTerms N_terms(Transformer& tr, const VectorField& w, const TensorField& gradpsi,
                       const PerturbationState& u, const FluidParams& p)
{
    const Grid& g = u.grid;
    const size_t n = u.phi.size();

    NonlinearTerms out;

    // q = (grad psi) w; N1 = div q and N3 = -grad q share one set of spectra, so
    // the trace identity N1 + tr N3 = 0 holds to roundoff
    VectorField q;
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        q[sj] = field_like(u.phi);
        for (size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m) s += gradpsi[tidx(j, m)][i] * w[static_cast<size_t>(m)][i];
            q[sj][i] = s;
        }
    }
    std::array<SpecField, 3> qh;
    for (int j = 0; j < 3; ++j) tr.forward(q[static_cast<size_t>(j)], qh[static_cast<size_t>(j)]);

    SpecField tmp;
    SpecField acc(static_cast<size_t>(g.n_spec()), cplx{0.0, 0.0});
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            apply_derivative(g, qh[static_cast<size_t>(j)], k, tmp);
            RealField& t = out.N3[tidx(j, k)];
            tr.inverse(tmp, t);
            for (double& v : t) v = -v;
            if (j == k)
                for (size_t i = 0; i < acc.size(); ++i) acc[i] += tmp[i];
        }
    tr.inverse(acc, out.N1);

    out.N2 = n2_term(tr, gradpsi, u, p);
    return out;
}

VectorField displacement_rhs(const Grid& g, const TensorField& gradpsi, const VectorField& v)
{
    const size_t n = static_cast<size_t>(g.n_real());
    VectorField out;
    for (int j = 0; j < 3; ++j) {
        const size_t sj = static_cast<size_t>(j);
        out[sj] = RealField(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            double adv = 0.0;
            for (int m = 0; m < 3; ++m)
                adv += gradpsi[tidx(j, m)][i] * v[static_cast<size_t>(m)][i];
            out[sj][i] = v[sj][i] - adv;
        }
    }
    return out;
}

VectorField displacement_rhs(Transformer& tr, const VectorField& psi, const VectorField& v)
{
    return displacement_rhs(tr.grid(), jacobian(tr, psi), v);
}

} // namespace viscolab
