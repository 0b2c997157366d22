// SPDX-License-Identifier: Apache-2.0
#include "viscolab/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "viscolab/dispersion.hpp"

namespace viscolab {

namespace {

double mollifier(double s)
{
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

} // namespace

double smooth_step(double s)
{
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double g = mollifier(s);
    return g / (g + mollifier(1.0 - s));
}

CutoffFamily cutoff_family(const FluidParams& p)
{
    const BandThresholds th = band_thresholds(p);
    if (!(th.M1 <= th.M2)) throw std::logic_error("cutoff_family: thresholds out of order");
    return CutoffFamily{th.M1, th.M2};
}

BandWeights cutoff_values(const CutoffFamily& f, double k)
{
    const double lo0 = f.M1 / 2.0;
    const double lo1 = f.M1 / std::sqrt(2.0);
    const double hi0 = std::sqrt(2.0) * f.M2;
    const double hi1 = 2.0 * f.M2;

    BandWeights w;
    w.low = 1.0 - smooth_step((k - lo0) / (lo1 - lo0));
    w.high = smooth_step((k - hi0) / (hi1 - hi0));
    w.mid = 1.0 - w.low - w.high;
    return w;
}

BandWeights band_weights(const FluidParams& p, double k)
{
    return cutoff_values(cutoff_family(p), k);
}

SpectralState project_band(const SpectralState& s, const CutoffFamily& f, Band band)
{
    SpectralState out = s;
    const Grid& g = s.grid;
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const auto xi = g.wavevector(j0, j1, j2);
                const double k =
                    std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
                const BandWeights w = cutoff_values(f, k);
                double m = 0.0;
                switch (band) {
                case Band::Low: m = w.low; break;
                case Band::Mid: m = w.mid; break;
                case Band::High: m = w.high; break;
                case Band::P1: m = w.low; break;
                case Band::Pinf: m = w.mid + w.high; break;
                }
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                for (auto& c : out.comp) c[idx] *= m;
            }
    return out;
}

SpectralState helmholtz(const SpectralState& s, Helm which)
{
    SpectralState out = s;
    const Grid& g = s.grid;
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                const auto xi = g.wavevector(j0, j1, j2);
                const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                if (k2 == 0.0) {
                    if (which == Helm::Q)
                        for (int c = 0; c < 13; ++c) out.comp[static_cast<size_t>(c)][idx] = 0.0;
                    continue;
                }
                // The scalar has no transverse part: it rides with the longitudinal sector.
                out.comp[static_cast<size_t>(idx_phi)][idx] =
                    which == Helm::Q ? s.comp[static_cast<size_t>(idx_phi)][idx] : 0.0;

                cplx w[3], G[3][3];
                for (int j = 0; j < 3; ++j) {
                    w[j] = s.comp[static_cast<size_t>(idx_w(j))][idx];
                    for (int m = 0; m < 3; ++m)
                        G[j][m] = s.comp[static_cast<size_t>(idx_G(j, m))][idx];
                }

                cplx xw = 0.0;
                for (int j = 0; j < 3; ++j) xw += xi[j] * w[j];
                xw /= k2;
                cplx xg[3] = {0.0, 0.0, 0.0}; // (xi^T G)_m / |xi|^2
                for (int m = 0; m < 3; ++m) {
                    for (int j = 0; j < 3; ++j) xg[m] += xi[j] * G[j][m];
                    xg[m] /= k2;
                }

                for (int j = 0; j < 3; ++j) {
                    const cplx qw = xi[j] * xw;
                    out.comp[static_cast<size_t>(idx_w(j))][idx] =
                        which == Helm::Q ? qw : w[j] - qw;
                    for (int m = 0; m < 3; ++m) {
                        const cplx qg = xi[j] * xg[m];
                        out.comp[static_cast<size_t>(idx_G(j, m))][idx] =
                            which == Helm::Q ? qg : G[j][m] - qg;
                    }
                }
            }
    return out;
}

double min_branch_decay(const FluidParams& p, double k_lo, double k_hi)
{
    if (!(k_lo > 0.0) || !(k_hi > k_lo))
        throw std::invalid_argument("min_branch_decay: need 0 < k_lo < k_hi");
    double gap = std::numeric_limits<double>::infinity();
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double k = k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / n);
        const BranchPair la = lambda_pm(p, k);
        const BranchPair mu = mu_pm(p, k);
        gap = std::min({gap, std::abs(la.plus.real()), std::abs(la.minus.real()),
                        std::abs(mu.plus.real()), std::abs(mu.minus.real())});
    }
    return gap;
}

double high_band_min_decay(const FluidParams& p)
{
    const BandThresholds th = band_thresholds(p);
    const double k0 = 2.0 * th.M2;

    // Large-k limits of the slow roots: product/sum of each quadratic's roots give
    // |z_slow| -> b/a as k -> infinity.
    const double tail = std::min(p.beta2() / p.nu, (p.beta2() + p.gamma2()) / p.nu_hat());
    return std::min(tail, min_branch_decay(p, k0, std::max(1000.0, 100.0 * k0)));
}

} // namespace viscolab
