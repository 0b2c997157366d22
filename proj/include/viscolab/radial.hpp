// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "viscolab/params.hpp"

namespace viscolab {

// Gauss-Legendre rule on [-1, 1] (Newton iteration on the recurrence).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

// Spherical Bessel j_l for l = 0, 1, 2; series below |z| = 1 to avoid the
// cancellation in the closed forms.
double sph_bessel(int l, double z);

// Radial synthesis primitives on [0, kmax] (sqrt(2/pi) prefactor throughout):
//   scalar  f(s)      =  S[fk](s)            = +c int k^2 fk(k) j0(ks) dk
//   vector  v = V(s) x_hat from v_hat = i W(k) xi_hat:   V = -c int k^2 W j1 dk
//   tensor  deviatoric amplitude from G_hat = B(k) xi_hat xi_hat^T:
//           beta(s) = -c int k^2 B j2 dk,  G(x) = (iso - beta/3) I + beta x x^T
double synth_scalar(const std::function<double(double)>& fk, double s, double kmax, int nodes);
double synth_vector(const std::function<double(double)>& Wk, double s, double kmax, int nodes);
double synth_tensor(const std::function<double(double)>& Bk, double s, double kmax, int nodes);

// Spherically symmetric admissible data, given by the two spectral potentials:
// psi_hat = i xi Psi0(k), w_hat = i xi Theta0(k). sigma is the Gaussian width used
// by the factories (the evaluator uses it to size its domains).
struct RadialData {
    std::function<double(double)> Psi0;
    std::function<double(double)> Theta0;
    double sigma = 1.0;
};

// Density-carrying data: Psi0 = amp_phi sigma^3 exp(-sigma^2 k^2/2) / k^2, so the
// density component has a nonvanishing zero-frequency limit amp_phi sigma^3 while
// every state component stays integrable (the potential's far tail is curl- and
// divergence-free). Theta0 is the plain Gaussian amp_w sigma^3 exp(-sigma^2 k^2/2).
RadialData monopole_data(double amp_phi, double amp_w, double sigma);

// Mean-zero control: Psi0 itself Gaussian, so the density component integrates to
// zero exactly. Used as the negative case for the low-frequency data check.
RadialData gaussian_potential_data(double amp_phi, double amp_w, double sigma);

// Closed-form state of the linearized system at time t and radius k in spectral
// variables. Everything is generated by the longitudinal 2x2 flow on (Psi, Theta):
//   phi_hat = k^2 Psi, w_hat = i (k Theta) xi_hat, G_hat = -k^2 Psi xi_hat xi_hat^T.
struct RadialSpectral {
    double Psi = 0.0;
    double Theta = 0.0;
    double phi_hat = 0.0;
    double W = 0.0; // k Theta
    double B = 0.0; // -k^2 Psi
};
RadialSpectral radial_spectral_at(const FluidParams& p, const RadialData& d, double t, double k);

// Physical-space profile at radius s: u = (phi, V x_hat, a I + b x_hat x_hat^T).
struct RadialProfile {
    double phi = 0.0;
    double V = 0.0;
    double a = 0.0;
    double b = 0.0;
};
double profile_magnitude(const RadialProfile& u); // pointwise l2 over the 13 components

// Kinematic reconstruction of the physical perturbation from a displacement-system
// profile: (a, b) are read as the grad-psi amplitudes, the scalar is recomputed from
// the determinant of I - grad psi and the tensor from its inverse; the velocity is
// shared by both formulations. Throws RegimeError when I - grad psi degenerates.
RadialProfile reconstruct_profile(const RadialProfile& U);

// Which field the evaluator's norms describe: the evolved displacement-system
// profile itself, or the reconstructed physical perturbation.
enum class ProfileView { Evolved, Reconstructed };

// One linear-evolution snapshot: precomputes the kernel-weighted spectrum on a
// quadrature grid sized by the data envelope, the parabolic decay envelope and the
// wave-cone radius, then evaluates physical profiles and norms by quadrature.
class RadialEvaluator {
  public:
    RadialEvaluator(const FluidParams& p, const RadialData& d, double t);

    RadialProfile profile(double s, ProfileView view = ProfileView::Evolved) const;
    // (4pi int s^2 m^p ds)^{1/p}, p >= 1
    double lp_norm(double p, ProfileView view = ProfileView::Evolved) const;
    // scan + local refinement
    double linf_norm(ProfileView view = ProfileView::Evolved) const;
    double spectral_l2(int grad_order) const;

    double kmax() const { return kmax_; }
    double rmax() const { return rmax_; }

  private:
    FluidParams p_;
    double t_ = 0.0;
    double kmax_ = 0.0;
    double rmax_ = 0.0;
    std::vector<double> kn_, kw_;
    std::vector<RadialSpectral> sp_;
};

// Exact initial state built kinematically from the potentials (matrix inverse of
// I - grad psi, determinant density), sampled for the low-frequency admissibility
// check: phi_hat, |momentum_hat| and |skew part| on the given k grid. Spherical
// symmetry makes the skew part vanish identically.
struct RadialInitialSamples {
    std::vector<double> k;
    std::vector<double> phi_hat;
    std::vector<double> m_mag;
    std::vector<double> skew_mag;
};
RadialInitialSamples lowfreq_samples(const RadialData& d, const std::vector<double>& kgrid);

} // namespace viscolab
