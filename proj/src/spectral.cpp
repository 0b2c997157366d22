// SPDX-License-Identifier: Apache-2.0
#include "viscolab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace viscolab {

namespace {

constexpr double kTwoPiPow = 15.749609945722419; // (2*pi)^{3/2}

} // namespace

Grid make_grid(int N, double R)
{
    if (N < 8 || (N & (N - 1)) != 0)
        throw std::invalid_argument("make_grid: N must be a power of two, N >= 8");
    if (!(R > 0.0)) throw std::invalid_argument("make_grid: R must be positive");
    return Grid{N, R};
}

void set_fftw_threads(int n)
{
#ifdef VISCOLAB_FFTW_THREADS
    static const bool ok = fftw_init_threads() != 0;
    if (ok && n > 0) fftw_plan_with_nthreads(n);
#else
    (void)n;
#endif
}

Transformer::Transformer(const Grid& g) : g_(g)
{
    if (g_.N < 4) throw std::invalid_argument("Transformer: grid not initialized");
    rbuf_ = fftw_alloc_real(static_cast<size_t>(g_.n_real()));
    cbuf_ = reinterpret_cast<cplx*>(fftw_alloc_complex(static_cast<size_t>(g_.n_spec())));
    if (!rbuf_ || !cbuf_) throw std::bad_alloc();
    fwd_ = reinterpret_cast<fftw_plan_s*>(fftw_plan_dft_r2c_3d(
        g_.N, g_.N, g_.N, rbuf_, reinterpret_cast<fftw_complex*>(cbuf_), FFTW_ESTIMATE));
    bwd_ = reinterpret_cast<fftw_plan_s*>(fftw_plan_dft_c2r_3d(
        g_.N, g_.N, g_.N, reinterpret_cast<fftw_complex*>(cbuf_), rbuf_, FFTW_ESTIMATE));
    if (!fwd_ || !bwd_) throw std::runtime_error("Transformer: FFTW plan creation failed");
}

Transformer::~Transformer()
{
    if (fwd_) fftw_destroy_plan(reinterpret_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(reinterpret_cast<fftw_plan>(bwd_));
    fftw_free(rbuf_);
    fftw_free(cbuf_);
}

void Transformer::forward(const RealField& u, SpecField& out)
{
    if (static_cast<std::ptrdiff_t>(u.size()) != g_.n_real())
        throw std::invalid_argument("forward: field size mismatch");
    out.resize(static_cast<size_t>(g_.n_spec()));
    std::memcpy(rbuf_, u.data(), sizeof(double) * u.size());
    fftw_execute(reinterpret_cast<fftw_plan>(fwd_));

    const double scale = std::pow(g_.dx(), 3) / kTwoPiPow;
    std::ptrdiff_t idx = 0;
    for (int j0 = 0; j0 < g_.N; ++j0)
        for (int j1 = 0; j1 < g_.N; ++j1)
            for (int j2 = 0; j2 < g_.spec_last(); ++j2, ++idx) {
                const double s = ((j0 + j1 + j2) & 1) ? -scale : scale;
                out[static_cast<size_t>(idx)] = s * cbuf_[idx];
            }
}

void Transformer::inverse(const SpecField& u_hat, RealField& out)
{
    if (static_cast<std::ptrdiff_t>(u_hat.size()) != g_.n_spec())
        throw std::invalid_argument("inverse: spectrum size mismatch");
    out.resize(static_cast<size_t>(g_.n_real()));

    const double scale = std::pow(g_.dk(), 3) / kTwoPiPow;
    std::ptrdiff_t idx = 0;
    for (int j0 = 0; j0 < g_.N; ++j0)
        for (int j1 = 0; j1 < g_.N; ++j1)
            for (int j2 = 0; j2 < g_.spec_last(); ++j2, ++idx) {
                const double s = ((j0 + j1 + j2) & 1) ? -scale : scale;
                cbuf_[idx] = s * u_hat[static_cast<size_t>(idx)];
            }
    fftw_execute(reinterpret_cast<fftw_plan>(bwd_));
    std::memcpy(out.data(), rbuf_, sizeof(double) * out.size());
}

RealField pointwise_magnitude(const Grid& g, const std::vector<const RealField*>& comps)
{
    RealField m(static_cast<size_t>(g.n_real()), 0.0);
    for (const RealField* c : comps) {
        if (static_cast<std::ptrdiff_t>(c->size()) != g.n_real())
            throw std::invalid_argument("pointwise_magnitude: component size mismatch");
        for (size_t i = 0; i < m.size(); ++i) m[i] += (*c)[i] * (*c)[i];
    }
    for (double& v : m) v = std::sqrt(v);
    return m;
}

double lp_norm(const Grid& g, const RealField& m, double p)
{
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double acc = 0.0;
    for (double v : m) acc += std::pow(std::abs(v), p);
    return std::pow(acc * std::pow(g.dx(), 3), 1.0 / p);
}

double linf_norm(const RealField& m)
{
    double mx = 0.0;
    for (double v : m) mx = std::max(mx, std::abs(v));
    return mx;
}

double spectral_l2(const Grid& g, const std::vector<const SpecField*>& comps, int order)
{
    double acc = 0.0;
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const auto xi = g.wavevector(j0, j1, j2);
                const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                const double w = spec_weight(g, j2) * std::pow(k2, order);
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                double local = 0.0;
                for (const SpecField* c : comps) local += std::norm((*c)[idx]);
                acc += w * local;
            }
    return std::sqrt(acc * std::pow(g.dk(), 3));
}

double sobolev_norm(const Grid& g, const std::vector<const SpecField*>& comps, double s)
{
    double acc = 0.0;
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const auto xi = g.wavevector(j0, j1, j2);
                const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                const double w = spec_weight(g, j2) * std::pow(1.0 + k2, s);
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                double local = 0.0;
                for (const SpecField* c : comps) local += std::norm((*c)[idx]);
                acc += w * local;
            }
    return std::sqrt(acc * std::pow(g.dk(), 3));
}

void apply_derivative(const Grid& g, const SpecField& in, int dim, SpecField& out)
{
    if (dim < 0 || dim > 2) throw std::invalid_argument("apply_derivative: dim out of range");
    out.resize(in.size());
    const cplx I{0.0, 1.0};
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const size_t idx = static_cast<size_t>(g.sidx(j0, j1, j2));
                const bool nyq = j0 == g.N / 2 || j1 == g.N / 2 || j2 == g.N / 2;
                if (nyq) {
                    out[idx] = 0.0;
                    continue;
                }
                const auto xi = g.wavevector(j0, j1, j2);
                out[idx] = I * xi[dim] * in[idx];
            }
}

void zero_nyquist(const Grid& g, SpecField& f)
{
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2)
                if (j0 == g.N / 2 || j1 == g.N / 2 || j2 == g.N / 2)
                    f[static_cast<size_t>(g.sidx(j0, j1, j2))] = 0.0;
}

void dealias_23(const Grid& g, SpecField& f)
{
    const int cut = g.N / 3;
    for (int j0 = 0; j0 < g.N; ++j0)
        for (int j1 = 0; j1 < g.N; ++j1)
            for (int j2 = 0; j2 < g.spec_last(); ++j2) {
                const bool kill = std::abs(g.signed_index(j0)) > cut ||
                                  std::abs(g.signed_index(j1)) > cut || j2 > cut;
                if (kill) f[static_cast<size_t>(g.sidx(j0, j1, j2))] = 0.0;
            }
}

RealField zero_field(const Grid& g)
{
    return RealField(static_cast<size_t>(g.n_real()), 0.0);
}

VectorField gradient(Transformer& tr, const RealField& f)
{
    SpecField fh, dh;
    tr.forward(f, fh);
    VectorField out;
    for (int d = 0; d < 3; ++d) {
        apply_derivative(tr.grid(), fh, d, dh);
        tr.inverse(dh, out[static_cast<size_t>(d)]);
    }
    return out;
}

TensorField jacobian(Transformer& tr, const VectorField& v)
{
    TensorField out;
    SpecField vh, dh;
    for (int j = 0; j < 3; ++j) {
        tr.forward(v[static_cast<size_t>(j)], vh);
        for (int k = 0; k < 3; ++k) {
            apply_derivative(tr.grid(), vh, k, dh);
            tr.inverse(dh, out[static_cast<size_t>(3 * j + k)]);
        }
    }
    return out;
}

RealField divergence(Transformer& tr, const VectorField& v)
{
    const Grid& g = tr.grid();
    SpecField acc(static_cast<size_t>(g.n_spec()), cplx{0.0, 0.0});
    SpecField vh, dh;
    for (int d = 0; d < 3; ++d) {
        tr.forward(v[static_cast<size_t>(d)], vh);
        apply_derivative(g, vh, d, dh);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += dh[i];
    }
    RealField out;
    tr.inverse(acc, out);
    return out;
}

VectorField divergence_tensor(Transformer& tr, const TensorField& M)
{
    const Grid& g = tr.grid();
    VectorField out;
    SpecField mh, dh;
    for (int j = 0; j < 3; ++j) {
        SpecField acc(static_cast<size_t>(g.n_spec()), cplx{0.0, 0.0});
        for (int m = 0; m < 3; ++m) {
            tr.forward(M[static_cast<size_t>(3 * j + m)], mh);
            apply_derivative(g, mh, m, dh);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += dh[i];
        }
        tr.inverse(acc, out[static_cast<size_t>(j)]);
    }
    return out;
}

} // namespace viscolab
