// SPDX-License-Identifier: Apache-2.0
#include "viscolab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "viscolab/errors.hpp"

namespace viscolab {

namespace {

double norm3(const std::array<double, 3>& xi)
{
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

// Visits every half-spectrum entry with its flat index, wavevector and integer
// squared lattice norm (the key the weight cache is indexed by).
template <class F> void for_each_mode(const Grid& g, F&& fn)
{
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const long long m0 = g.signed_index(j0);
                const long long m1 = g.signed_index(j1);
                const long long m2 = j2;
                fn(g.sidx(j0, j1, j2), g.wavevector(j0, j1, j2),
                   m0 * m0 + m1 * m1 + m2 * m2);
            }
}

// Lazily filled kernel weights per integer |m|^2 class; modes sharing a lattice
// radius reuse one evaluation.
class WeightTable {
  public:
    WeightTable(const FluidParams& p, const Grid& g, double t, PhiFun f)
        : p_(p), dk_(g.dk()), t_(t), f_(f)
    {
        const size_t n = static_cast<size_t>(3 * (g.N / 2) * (g.N / 2) + 1);
        w_.resize(n);
        have_.assign(n, 0);
    }

    const SymbolWeights& at(long long m2)
    {
        const size_t i = static_cast<size_t>(m2);
        if (!have_[i]) {
            w_[i] = symbol_weights(p_, dk_ * std::sqrt(static_cast<double>(m2)), t_, f_);
            have_[i] = 1;
        }
        return w_[i];
    }

  private:
    FluidParams p_;
    double dk_;
    double t_;
    PhiFun f_;
    std::vector<SymbolWeights> w_;
    std::vector<char> have_;
};

std::vector<const RealField*> comps13(const RealField& phi, const VectorField& w,
                                      const TensorField& G)
{
    std::vector<const RealField*> c;
    c.reserve(13);
    c.push_back(&phi);
    for (const auto& f : w) c.push_back(&f);
    for (const auto& f : G) c.push_back(&f);
    return c;
}

double linf_fields(const std::vector<const RealField*>& fs)
{
    double m = 0.0;
    for (const RealField* f : fs)
        for (double v : *f) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

SpectralState random_band_state(const Grid& g, double k_lo, double k_hi, std::uint64_t seed)
{
    SpectralState s = zero_spectral_state(g);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);

    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                // Nyquist planes stay empty (no consistent derivative sign there)
                if (j0 == g.N / 2 || j1 == g.N / 2 || j2 == g.N / 2) continue;
                const auto xi = g.wavevector(j0, j1, j2);
                const double k = norm3(xi);
                if (k < k_lo || k > k_hi) continue;

                if (j2 == 0) {
                    const int p0 = (g.N - j0) % g.N;
                    const int p1 = (g.N - j1) % g.N;
                    if (std::make_pair(p0, p1) < std::make_pair(j0, j1))
                        continue; // filled from its conjugate partner
                    if (p0 == j0 && p1 == j1) {
                        // self-conjugate entry: amplitude must be real, which the
                        // admissible form gives for imaginary psi and real w
                        Eigen::Vector3cd psi, w;
                        for (int c = 0; c < 3; ++c) {
                            psi(c) = cplx{0.0, nd(rng)};
                            w(c) = cplx{nd(rng), 0.0};
                        }
                        scatter_mode(s, g.sidx(j0, j1, j2), make_constraint_vector(psi, w, xi).v);
                        continue;
                    }
                    Eigen::Vector3cd psi, w;
                    for (int c = 0; c < 3; ++c) {
                        psi(c) = cplx{nd(rng), nd(rng)};
                        w(c) = cplx{nd(rng), nd(rng)};
                    }
                    const Vec13 v = make_constraint_vector(psi, w, xi).v;
                    scatter_mode(s, g.sidx(j0, j1, j2), v);
                    scatter_mode(s, g.sidx(p0, p1, j2), v.conjugate());
                    continue;
                }

                Eigen::Vector3cd psi, w;
                for (int c = 0; c < 3; ++c) {
                    psi(c) = cplx{nd(rng), nd(rng)};
                    w(c) = cplx{nd(rng), nd(rng)};
                }
                scatter_mode(s, g.sidx(j0, j1, j2), make_constraint_vector(psi, w, xi).v);
            }

    const double nrm = state_l2(s);
    if (nrm > 0.0)
        for (auto& c : s.comp)
            for (auto& z : c) z /= nrm;
    return s;
}

SpectralState make_displacement_state(Transformer& tr, const VectorField& psi0,
                                      const VectorField& v0)
{
    const Grid& g = tr.grid();
    std::array<SpecField, 3> ph, wh;
    for (int j = 0; j < 3; ++j) {
        tr.forward(psi0[static_cast<size_t>(j)], ph[static_cast<size_t>(j)]);
        tr.forward(v0[static_cast<size_t>(j)], wh[static_cast<size_t>(j)]);
    }
    SpectralState s = zero_spectral_state(g);
    for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>& xi, long long) {
        const size_t i = static_cast<size_t>(idx);
        const Eigen::Vector3cd psi(ph[0][i], ph[1][i], ph[2][i]);
        const Eigen::Vector3cd w(wh[0][i], wh[1][i], wh[2][i]);
        scatter_mode(s, idx, make_constraint_vector(psi, w, xi).v);
    });
    // the assembled gradient form has no consistent sign on the Nyquist planes
    for (auto& c : s.comp) zero_nyquist(g, c);
    return s;
}

SpectralState evolve_linear_grid(const FluidParams& p, const SpectralState& s0, double t)
{
    const Grid& g = s0.grid;

    double worst = 0.0;
    std::array<double, 3> worst_xi{};
    for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>& xi, long long) {
        ConstraintVector cv;
        cv.xi = xi;
        cv.v = gather_mode(s0, idx);
        const auto res = constraint_residuals(cv);
        const double m = std::max(res[0], res[1]);
        if (m > worst) {
            worst = m;
            worst_xi = xi;
        }
    });
    if (worst > 1e-8)
        throw std::invalid_argument(
            "evolve_linear_grid: state leaves the admissible subspace, relative residual " +
            std::to_string(worst) + " at xi = (" + std::to_string(worst_xi[0]) + ", " +
            std::to_string(worst_xi[1]) + ", " + std::to_string(worst_xi[2]) + ")");

    if (t == 0.0) return s0;

    WeightTable we(p, g, t, PhiFun::Exp);
    SpectralState out = s0;
    for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>& xi, long long m2) {
        scatter_mode(out, idx, apply_symbol(p, xi, we.at(m2), gather_mode(s0, idx)));
    });
    return out;
}

Trajectory evolve_linear_radial(const FluidParams& p, const RadialData& d,
                                const std::vector<double>& times)
{
    Trajectory out;
    for (double t : times) {
        const RadialEvaluator ev(p, d, t);
        NormRecord r;
        r.t = t;
        r.u_l1 = ev.lp_norm(1.0, ProfileView::Reconstructed);
        r.u_l2 = ev.lp_norm(2.0, ProfileView::Reconstructed);
        r.u_linf = ev.linf_norm(ProfileView::Reconstructed);
        r.U_l1 = ev.lp_norm(1.0, ProfileView::Evolved);
        r.U_l2 = ev.lp_norm(2.0, ProfileView::Evolved);
        r.U_linf = ev.linf_norm(ProfileView::Evolved);
        double sq = 0.0;
        for (int m = 0; m <= 3; ++m) {
            r.grad_l2[static_cast<size_t>(m)] = ev.spectral_l2(m);
            sq += r.grad_l2[static_cast<size_t>(m)] * r.grad_l2[static_cast<size_t>(m)];
        }
        r.h3 = std::sqrt(sq);
        out.norms.push_back(r);
    }
    return out;
}

namespace {

// Nonlinear forcing of the displacement system, transformed and dealiased:
// mq = -(grad psi) w (the generator of the N1/N3 pair), n2 the w-equation term.
struct ForcingSpec {
    std::array<SpecField, 3> mq;
    std::array<SpecField, 3> n2;
};

ForcingSpec eval_forcing(Transformer& tr, const FluidParams& p, const SpectralState& Y,
                         double t_now, double dt, double grad_guard)
{
    const Grid& g = Y.grid;
    const size_t n = static_cast<size_t>(g.n_real());

    TensorField A;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            tr.inverse(Y.comp[static_cast<size_t>(idx_G(j, k))], A[static_cast<size_t>(3 * j + k)]);
    VectorField w;
    for (int j = 0; j < 3; ++j)
        tr.inverse(Y.comp[static_cast<size_t>(idx_w(j))], w[static_cast<size_t>(j)]);

    double ainf = 0.0, winf = 0.0;
    for (const auto& f : A)
        for (double v : f) ainf = std::max(ainf, std::abs(v));
    for (const auto& f : w)
        for (double v : f) winf = std::max(winf, std::abs(v));
    if (ainf > grad_guard)
        throw RegimeError("evolve_nonlinear: ||grad psi||_inf = " + std::to_string(ainf) +
                          " exceeds the guard " + std::to_string(grad_guard) + " at t = " +
                          std::to_string(t_now));
    if (winf > 0.0 && dt > 0.5 * g.dx() / winf)
        throw RegimeError("evolve_nonlinear: CFL guard: dt = " + std::to_string(dt) +
                          " exceeds 0.5 dx / max|w| = " + std::to_string(0.5 * g.dx() / winf) +
                          " at t = " + std::to_string(t_now));

    PerturbationState u;
    u.grid = g;
    u.w = w;
    VectorField N2;
    try {
        u.G = gradpsi_to_G(A);
        u.phi = phi_from_gradpsi(A);
        N2 = n2_term(tr, A, u, p);
    } catch (const RegimeError& e) {
        throw RegimeError(std::string(e.what()) + " (t = " + std::to_string(t_now) + ")");
    }

    ForcingSpec f;
    RealField mq(n);
    for (int j = 0; j < 3; ++j) {
        for (size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m)
                s += A[static_cast<size_t>(3 * j + m)][i] * w[static_cast<size_t>(m)][i];
            mq[i] = -s;
        }
        tr.forward(mq, f.mq[static_cast<size_t>(j)]);
        dealias_23(g, f.mq[static_cast<size_t>(j)]);
        tr.forward(N2[static_cast<size_t>(j)], f.n2[static_cast<size_t>(j)]);
        dealias_23(g, f.n2[static_cast<size_t>(j)]);
    }
    return f;
}

Vec13 forcing_mode(const ForcingSpec& f, const std::array<double, 3>& xi, std::ptrdiff_t idx)
{
    const size_t i = static_cast<size_t>(idx);
    const Eigen::Vector3cd mq(f.mq[0][i], f.mq[1][i], f.mq[2][i]);
    const Eigen::Vector3cd n2(f.n2[0][i], f.n2[1][i], f.n2[2][i]);
    return make_constraint_vector(mq, n2, xi).v;
}

void record_sample(Transformer& tr, const SpectralState& Y, double t, bool keep_checkpoint,
                   Trajectory& out)
{
    const Grid& g = Y.grid;

    TensorField A;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            tr.inverse(Y.comp[static_cast<size_t>(idx_G(j, k))], A[static_cast<size_t>(3 * j + k)]);
    VectorField w;
    for (int j = 0; j < 3; ++j)
        tr.inverse(Y.comp[static_cast<size_t>(idx_w(j))], w[static_cast<size_t>(j)]);
    RealField phit;
    tr.inverse(Y.comp[static_cast<size_t>(idx_phi)], phit);

    PerturbationState u;
    u.grid = g;
    u.w = w;
    u.G = gradpsi_to_G(A);
    u.phi = phi_from_gradpsi(A);

    NormRecord nr;
    nr.t = t;
    {
        const RealField mag = pointwise_magnitude(g, comps13(u.phi, u.w, u.G));
        nr.u_l1 = lp_norm(g, mag, 1.0);
        nr.u_l2 = lp_norm(g, mag, 2.0);
        nr.u_linf = linf_norm(mag);
    }
    {
        const RealField mag = pointwise_magnitude(g, comps13(phit, w, A));
        nr.U_l1 = lp_norm(g, mag, 1.0);
        nr.U_l2 = lp_norm(g, mag, 2.0);
        nr.U_linf = linf_norm(mag);
    }
    SpectralState su = to_spectral(tr, u);
    double sq = 0.0;
    for (int m = 0; m <= 3; ++m) {
        nr.grad_l2[static_cast<size_t>(m)] = state_l2(su, m);
        sq += nr.grad_l2[static_cast<size_t>(m)] * nr.grad_l2[static_cast<size_t>(m)];
    }
    nr.h3 = std::sqrt(sq);
    out.norms.push_back(nr);

    ResidualRecord rr;
    rr.t = t;
    RealField rho = u.phi;
    for (double& v : rho) v += 1.0;
    TensorField F = u.G;
    for (int j = 0; j < 3; ++j)
        for (double& v : F[static_cast<size_t>(4 * j)]) v += 1.0;
    const ConstraintResiduals cr = constraint_residuals(tr, rho, w, F);
    rr.r_det = cr.r_det.linf;
    rr.r_piola = cr.r_piola.linf;
    rr.r_div = cr.r_div.linf;

    double res = 0.0, amp = 0.0;
    for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>&, long long) {
        const Vec13 v = gather_mode(Y, idx);
        const cplx trace = v(idx_phi) + v(idx_G(0, 0)) + v(idx_G(1, 1)) + v(idx_G(2, 2));
        res = std::max(res, std::abs(trace));
        amp = std::max(amp, v.cwiseAbs().maxCoeff());
    });
    rr.trace_drift = amp > 0.0 ? res / amp : 0.0;
    out.residuals.push_back(rr);

    if (keep_checkpoint) out.checkpoints.emplace_back(t, Y);
}

} // namespace

Trajectory evolve_nonlinear(Transformer& tr, const FluidParams& p, const VectorField& psi0,
                            const VectorField& v0, const NonlinearRunConfig& cfg)
{
    const Grid& g = tr.grid();
    if (cfg.T <= 0.0 || cfg.dt <= 0.0)
        throw std::invalid_argument("evolve_nonlinear: T and dt must be positive");

    {
        const TensorField A0 = jacobian(tr, psi0);
        std::vector<const RealField*> fs;
        for (const auto& f : A0) fs.push_back(&f);
        const double a0 = linf_fields(fs);
        if (a0 > 0.1)
            throw RegimeError("evolve_nonlinear: ||grad psi0||_inf = " + std::to_string(a0) +
                              " exceeds the small-data entry bound 0.1");
    }

    SpectralState Y = make_displacement_state(tr, psi0, v0);
    for (auto& c : Y.comp) dealias_23(g, c);

    const long n_steps = std::max<long>(1, std::lround(cfg.T / cfg.dt));
    const double dt = cfg.T / static_cast<double>(n_steps);
    const long rec_every = std::max<long>(1, n_steps / std::max(1, cfg.samples - 1));

    Trajectory out;
    record_sample(tr, Y, 0.0, cfg.keep_checkpoints, out);

    WeightTable we(p, g, dt, PhiFun::Exp);
    WeightTable w1(p, g, dt, PhiFun::Phi1);
    WeightTable w2(p, g, dt, PhiFun::Phi2);

    SpectralState Ystage = zero_spectral_state(g);
    for (long n = 0; n < n_steps; ++n) {
        const double tn = static_cast<double>(n) * dt;

        const ForcingSpec f0 = eval_forcing(tr, p, Y, tn, dt, cfg.grad_guard);
        for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>& xi, long long m2) {
            const Vec13 y = gather_mode(Y, idx);
            const Vec13 fv = forcing_mode(f0, xi, idx);
            const Vec13 a = apply_symbol(p, xi, we.at(m2), y) +
                            dt * apply_symbol(p, xi, w1.at(m2), fv);
            scatter_mode(Ystage, idx, a);
        });

        const ForcingSpec f1 = eval_forcing(tr, p, Ystage, tn + dt, dt, cfg.grad_guard);
        for_each_mode(g, [&](std::ptrdiff_t idx, const std::array<double, 3>& xi, long long m2) {
            const Vec13 df = forcing_mode(f1, xi, idx) - forcing_mode(f0, xi, idx);
            const Vec13 y = gather_mode(Ystage, idx) + dt * apply_symbol(p, xi, w2.at(m2), df);
            scatter_mode(Y, idx, y);
        });

        if ((n + 1) % rec_every == 0 || n + 1 == n_steps)
            record_sample(tr, Y, static_cast<double>(n + 1) * dt, cfg.keep_checkpoints, out);
    }
    return out;
}

GrowthResult l1_growth_experiment(const FluidParams& p, const RadialData& d,
                                  const std::vector<double>& times, const LowfreqGate& gate)
{
    GrowthResult out;

    std::vector<double> kgrid;
    for (int i = 1; i <= gate.samples; ++i)
        kgrid.push_back(gate.r * static_cast<double>(i) / gate.samples);
    out.check = lowfreq_condition_check(lowfreq_samples(d, kgrid), gate.r, gate.c0, gate.c1,
                                        gate.eta0);

    out.traj = evolve_linear_radial(p, d, times);

    std::vector<double> t, l1, l2, li;
    for (const NormRecord& r : out.traj.norms) {
        t.push_back(r.t);
        l1.push_back(r.u_l1);
        l2.push_back(r.U_l2);
        li.push_back(r.u_linf);
    }
    out.l1_fit = fit_power_law(t, l1);
    out.l2_fit = fit_power_law(t, l2);
    out.linf_fit = fit_power_law(t, li);
    return out;
}

} // namespace viscolab
