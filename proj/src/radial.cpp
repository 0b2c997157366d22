// SPDX-License-Identifier: Apache-2.0
#include "viscolab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "viscolab/dispersion.hpp"
#include "viscolab/errors.hpp"
#include "viscolab/phi_kernels.hpp"

namespace viscolab {

namespace {

const double kSynthC = std::sqrt(2.0 / M_PI);

struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite Gauss-Legendre nodes/weights on [a, b] with ~n total nodes in panels of 16.
PanelRule composite_rule(double a, double b, int n)
{
    static const GaussLegendre gl = gauss_legendre(16);
    const int panels = std::max(1, (n + 15) / 16);
    PanelRule r;
    r.nodes.reserve(static_cast<size_t>(panels) * 16);
    r.weights.reserve(static_cast<size_t>(panels) * 16);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < 16; ++i) {
            r.nodes.push_back(lo + 0.5 * h * (gl.nodes[i] + 1.0));
            r.weights.push_back(0.5 * h * gl.weights[i]);
        }
    }
    return r;
}

} // namespace

GaussLegendre gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussLegendre gl;
    gl.nodes.resize(static_cast<size_t>(n));
    gl.weights.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[static_cast<size_t>(i)] = -x;
        gl.nodes[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[static_cast<size_t>(i)] = w;
        gl.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return gl;
}

double sph_bessel(int l, double z)
{
    const double z2 = z * z;
    switch (l) {
    case 0:
        if (std::abs(z) < 1.0)
            return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0 * (1.0 - z2 / 72.0 * (1.0 - z2 / 110.0))));
        return std::sin(z) / z;
    case 1:
        if (std::abs(z) < 1.0)
            return z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0 * (1.0 - z2 / 54.0 * (1.0 - z2 / 88.0))));
        return (std::sin(z) - z * std::cos(z)) / z2;
    case 2:
        if (std::abs(z) < 1.0)
            return z2 / 15.0 * (1.0 - z2 / 14.0 * (1.0 - z2 / 36.0 * (1.0 - z2 / 66.0 * (1.0 - z2 / 104.0))));
        return ((3.0 - z2) * std::sin(z) - 3.0 * z * std::cos(z)) / (z2 * z);
    default: throw std::invalid_argument("sph_bessel: l must be 0, 1, or 2");
    }
}

double synth_scalar(const std::function<double(double)>& fk, double s, double kmax, int nodes)
{
    const PanelRule r = composite_rule(0.0, kmax, nodes);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double k = r.nodes[i];
        acc += r.weights[i] * k * k * fk(k) * sph_bessel(0, k * s);
    }
    return kSynthC * acc;
}

double synth_vector(const std::function<double(double)>& Wk, double s, double kmax, int nodes)
{
    const PanelRule r = composite_rule(0.0, kmax, nodes);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double k = r.nodes[i];
        acc += r.weights[i] * k * k * Wk(k) * sph_bessel(1, k * s);
    }
    return -kSynthC * acc;
}

double synth_tensor(const std::function<double(double)>& Bk, double s, double kmax, int nodes)
{
    const PanelRule r = composite_rule(0.0, kmax, nodes);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double k = r.nodes[i];
        acc += r.weights[i] * k * k * Bk(k) * sph_bessel(2, k * s);
    }
    return -kSynthC * acc;
}

RadialData monopole_data(double amp_phi, double amp_w, double sigma)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("monopole_data: sigma must be positive");
    const double s3 = sigma * sigma * sigma;
    RadialData d;
    d.sigma = sigma;
    d.Psi0 = [amp_phi, s3, sigma](double k) {
        return amp_phi * s3 * std::exp(-0.5 * sigma * sigma * k * k) / (k * k);
    };
    d.Theta0 = [amp_w, s3, sigma](double k) {
        return amp_w * s3 * std::exp(-0.5 * sigma * sigma * k * k);
    };
    return d;
}

RadialData gaussian_potential_data(double amp_phi, double amp_w, double sigma)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_potential_data: sigma must be positive");
    const double s3 = sigma * sigma * sigma;
    RadialData d;
    d.sigma = sigma;
    d.Psi0 = [amp_phi, s3, sigma](double k) {
        return amp_phi * s3 * std::exp(-0.5 * sigma * sigma * k * k);
    };
    d.Theta0 = [amp_w, s3, sigma](double k) {
        return amp_w * s3 * std::exp(-0.5 * sigma * sigma * k * k);
    };
    return d;
}

RadialSpectral radial_spectral_at(const FluidParams& p, const RadialData& d, double t, double k)
{
    if (!(k > 0.0)) throw std::invalid_argument("radial_spectral_at: k must be positive");
    const KernelTriple km = semigroup_kernels(mu_pm(p, k), t, PhiFun::Exp);
    const double Psi0 = d.Psi0(k);
    const double Theta0 = d.Theta0(k);
    const double b2 = (p.beta2() + p.gamma2()) * k * k;

    RadialSpectral s;
    s.Psi = km.Mm * Psi0 + km.K * Theta0;
    s.Theta = -b2 * km.K * Psi0 + km.Mp * Theta0;
    s.phi_hat = k * k * s.Psi;
    s.W = k * s.Theta;
    s.B = -k * k * s.Psi;
    return s;
}

RadialEvaluator::RadialEvaluator(const FluidParams& p, const RadialData& d, double t)
    : p_(p), t_(t)
{
    if (t < 0.0) throw std::invalid_argument("RadialEvaluator: negative time");

    // Data-envelope cutoff: largest k where the weighted spectrum is above 1e-20
    // of its maximum.
    double wmax = 0.0, kdata = 1e-3;
    const double kscan_hi = 60.0 / d.sigma;
    for (int i = 0; i <= 2400; ++i) {
        const double k = 1e-4 * std::pow(kscan_hi / 1e-4, i / 2400.0);
        const double k2 = k * k;
        const double w = (k2 + k2 * k2) * (std::abs(d.Psi0(k)) + std::abs(d.Theta0(k)));
        wmax = std::max(wmax, w);
    }
    for (int i = 2400; i >= 0; --i) {
        const double k = 1e-4 * std::pow(kscan_hi / 1e-4, i / 2400.0);
        const double k2 = k * k;
        const double w = (k2 + k2 * k2) * (std::abs(d.Psi0(k)) + std::abs(d.Theta0(k)));
        if (w >= 1e-20 * wmax) {
            kdata = 1.15 * k;
            break;
        }
    }
    kmax_ = kdata;

    // Parabolic decay envelope exp(-nu k^2 t / 2): valid up to the first branch
    // coalescence, so apply the cutoff only when it lands below that radius.
    if (t > 0.0) {
        const double kenv = std::sqrt(150.0 / (p.nu * t));
        const double kcoal = std::min(coalescence_radius(p, BranchFamily::Lambda),
                                      coalescence_radius(p, BranchFamily::Mu));
        if (kenv < kcoal) kmax_ = std::min(kmax_, kenv);
    }
    kmax_ = std::max(kmax_, 1e-3);

    const double c = p.wave_speed_long();
    rmax_ = c * t + 12.0 * std::sqrt(p.nu_hat() * t) + 12.0 * d.sigma + 8.0;

    const double cycles = kmax_ * (rmax_ + c * t) / (2.0 * M_PI);
    const int n = static_cast<int>(std::clamp(6.0 * cycles, 200.0, 6000.0));
    const PanelRule r = composite_rule(0.0, kmax_, n);
    kn_ = r.nodes;
    kw_ = r.weights;
    sp_.reserve(kn_.size());
    for (double k : kn_) sp_.push_back(radial_spectral_at(p, d, t, k));
}

RadialProfile RadialEvaluator::profile(double s, ProfileView view) const
{
    double phi = 0.0, iso = 0.0, V = 0.0, beta = 0.0;
    for (size_t i = 0; i < kn_.size(); ++i) {
        const double k = kn_[i];
        const double w = kw_[i] * k * k;
        const double z = k * s;
        phi += w * sp_[i].phi_hat * sph_bessel(0, z);
        iso += w * (sp_[i].B / 3.0) * sph_bessel(0, z);
        V -= w * sp_[i].W * sph_bessel(1, z);
        beta -= w * sp_[i].B * sph_bessel(2, z);
    }
    RadialProfile u;
    u.phi = kSynthC * phi;
    u.V = kSynthC * V;
    u.b = kSynthC * beta;
    u.a = kSynthC * iso - u.b / 3.0;
    return view == ProfileView::Evolved ? u : reconstruct_profile(u);
}

double profile_magnitude(const RadialProfile& u)
{
    return std::sqrt(u.phi * u.phi + u.V * u.V + 3.0 * u.a * u.a + 2.0 * u.a * u.b + u.b * u.b);
}

RadialProfile reconstruct_profile(const RadialProfile& U)
{
    const double al = 1.0 - U.a;
    const double rad = al - U.b;
    if (!(al > 0.2) || !(rad > 0.2))
        throw RegimeError("reconstruct_profile: I - grad psi near singular");
    RadialProfile u;
    u.phi = al * al * rad - 1.0;
    u.V = U.V;
    u.a = U.a / al;
    u.b = U.b / (al * rad);
    return u;
}

double RadialEvaluator::lp_norm(double p, ProfileView view) const
{
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double cycles = kmax_ * rmax_ / (2.0 * M_PI);
    const int n = static_cast<int>(std::clamp(6.0 * cycles, 320.0, 4800.0));
    const PanelRule r = composite_rule(0.0, rmax_, n);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double s = r.nodes[i];
        acc += r.weights[i] * s * s * std::pow(profile_magnitude(profile(s, view)), p);
    }
    return std::pow(4.0 * M_PI * acc, 1.0 / p);
}

double RadialEvaluator::linf_norm(ProfileView view) const
{
    std::vector<double> cand;
    const int n0 = 900;
    for (int i = 0; i <= n0; ++i) cand.push_back(rmax_ * i / n0);
    const double c = p_.wave_speed_long();
    if (t_ > 0.0) {
        const double shell = c * t_;
        const double half = 14.0 * std::sqrt(p_.nu_hat() * t_ + 1.0) + 10.0;
        const double lo = std::max(0.0, shell - half), hi = std::min(rmax_, shell + half);
        for (int i = 0; i <= 600; ++i) cand.push_back(lo + (hi - lo) * i / 600.0);
    }

    double best = 0.0, sbest = 0.0;
    for (double s : cand) {
        const double m = profile_magnitude(profile(s, view));
        if (m > best) {
            best = m;
            sbest = s;
        }
    }
    // Local ternary refinement around the best sample.
    double lo = std::max(0.0, sbest - rmax_ / n0), hi = std::min(rmax_, sbest + rmax_ / n0);
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (profile_magnitude(profile(m1, view)) < profile_magnitude(profile(m2, view)))
            lo = m1;
        else
            hi = m2;
    }
    best = std::max(best, profile_magnitude(profile(0.5 * (lo + hi), view)));
    return best;
}

double RadialEvaluator::spectral_l2(int grad_order) const
{
    double acc = 0.0;
    for (size_t i = 0; i < kn_.size(); ++i) {
        const double k = kn_[i];
        const double density = sp_[i].phi_hat * sp_[i].phi_hat + sp_[i].W * sp_[i].W +
                               sp_[i].B * sp_[i].B;
        acc += kw_[i] * k * k * std::pow(k * k, grad_order) * density;
    }
    return std::sqrt(4.0 * M_PI * acc);
}

RadialInitialSamples lowfreq_samples(const RadialData& d, const std::vector<double>& kgrid)
{
    // Physical profiles of the exact (kinematically built) initial state.
    const RadialEvaluator ev(unit_params(), d, 0.0);
    const double sext = 12.0 * d.sigma + 30.0;
    const int n_s = 2048;
    const PanelRule r = composite_rule(0.0, sext, n_s);

    std::vector<double> phi0(r.nodes.size()), mom(r.nodes.size());
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        // At t = 0 the linear profile (a, b) is exactly grad psi0.
        const RadialProfile u = ev.profile(r.nodes[i], ProfileView::Reconstructed);
        phi0[i] = u.phi;
        mom[i] = (1.0 + u.phi) * u.V;
    }

    RadialInitialSamples out;
    out.k = kgrid;
    out.phi_hat.resize(kgrid.size());
    out.m_mag.resize(kgrid.size());
    out.skew_mag.assign(kgrid.size(), 0.0);
    for (size_t j = 0; j < kgrid.size(); ++j) {
        double f0 = 0.0, f1 = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            const double s = r.nodes[i];
            const double w = r.weights[i] * s * s;
            f0 += w * phi0[i] * sph_bessel(0, kgrid[j] * s);
            f1 += w * mom[i] * sph_bessel(1, kgrid[j] * s);
        }
        out.phi_hat[j] = kSynthC * f0;
        out.m_mag[j] = std::abs(kSynthC * f1);
    }
    return out;
}

} // namespace viscolab
