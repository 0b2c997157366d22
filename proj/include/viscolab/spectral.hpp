// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "viscolab/phi_kernels.hpp"

struct fftw_plan_s; // avoid leaking <fftw3.h> into every consumer

namespace viscolab {

using RealField = std::vector<double>; // N^3 samples, row-major (i0 slowest)
using SpecField = std::vector<cplx>;   // N*N*(N/2+1) half-spectrum coefficients

// Uniform periodic grid on the centered cube [-R, R)^3 with N (even) points per
// dimension. Fourier modes are k_m = (pi/R) m, m in [-N/2, N/2); the half-spectrum
// stores the last dimension's nonnegative m only (real-data symmetry).
struct Grid {
    int N = 0;
    double R = 0.0;

    double dx() const { return 2.0 * R / N; }
    double dk() const { return M_PI / R; }
    double x(int i) const { return -R + i * dx(); }
    int signed_index(int j) const { return j < N / 2 ? j : j - N; }
    double k(int j) const { return dk() * signed_index(j); }

    int spec_last() const { return N / 2 + 1; }
    std::ptrdiff_t n_real() const { return static_cast<std::ptrdiff_t>(N) * N * N; }
    std::ptrdiff_t n_spec() const { return static_cast<std::ptrdiff_t>(N) * N * spec_last(); }
    std::ptrdiff_t ridx(int i0, int i1, int i2) const
    {
        return (static_cast<std::ptrdiff_t>(i0) * N + i1) * N + i2;
    }
    std::ptrdiff_t sidx(int j0, int j1, int j2) const
    {
        return (static_cast<std::ptrdiff_t>(j0) * N + j1) * spec_last() + j2;
    }
    // Wavevector of the half-spectrum entry (j0, j1, j2); j2 is the raw r2c index.
    std::array<double, 3> wavevector(int j0, int j1, int j2) const
    {
        return {k(j0), k(j1), dk() * j2};
    }
};

Grid make_grid(int N, double R); // validates N = power of two >= 8, R > 0

// Multiplicity of a half-spectrum entry when summing over the full spectrum
// (2 for interior last-dimension planes, 1 for the self-conjugate ones).
inline double spec_weight(const Grid& g, int j2) { return (j2 == 0 || j2 == g.N / 2) ? 1.0 : 2.0; }

// Discrete approximation of the continuous Fourier transform pair with the
// unitary (2pi)^{-3/2} normalization on the centered box:
//   forward: u_hat(m) = (2pi)^{-3/2} dx^3 (-1)^{m0+m1+m2} FFT[u](m)
//   inverse: the adjoint scaling with dk^3, so inverse(forward(u)) == u to roundoff.
// Plans are created with FFTW_ESTIMATE for run-to-run determinism.
class Transformer {
  public:
    explicit Transformer(const Grid& g);
    ~Transformer();
    Transformer(const Transformer&) = delete;
    Transformer& operator=(const Transformer&) = delete;

    const Grid& grid() const { return g_; }
    void forward(const RealField& u, SpecField& out);
    void inverse(const SpecField& u_hat, RealField& out); // input copied, not clobbered

  private:
    Grid g_;
    double* rbuf_ = nullptr;
    cplx* cbuf_ = nullptr;
    fftw_plan_s* fwd_ = nullptr;
    fftw_plan_s* bwd_ = nullptr;
};

// Worker-thread count for subsequent plan creation (no-op unless FFTW's threaded
// library was found at configure time).
void set_fftw_threads(int n);

// Pointwise l2 magnitude across components: m(x) = sqrt(sum_c u_c(x)^2).
RealField pointwise_magnitude(const Grid& g, const std::vector<const RealField*>& comps);

// Norms of a scalar sample field (typically the pointwise magnitude).
double lp_norm(const Grid& g, const RealField& m, double p); // (sum m^p dx^3)^{1/p}
double linf_norm(const RealField& m);

// l2 norm via the half-spectrum, with an optional derivative weight |k|^{2*order}
// inside the sum. Equals the physical-space l2 norm by the discrete Plancherel
// identity when order == 0.
double spectral_l2(const Grid& g, const std::vector<const SpecField*>& comps, int order = 0);

// Sobolev norm sqrt(sum (1+|k|^2)^s |u_hat|^2 dk^3) over all listed components.
double sobolev_norm(const Grid& g, const std::vector<const SpecField*>& comps, double s);

// out = i k_dim * in, with the Nyquist planes zeroed (the centered derivative has
// no consistent sign there).
void apply_derivative(const Grid& g, const SpecField& in, int dim, SpecField& out);

void zero_nyquist(const Grid& g, SpecField& f);
void dealias_23(const Grid& g, SpecField& f); // zero |m_d| > N/3 in any dimension

using VectorField = std::array<RealField, 3>;
using TensorField = std::array<RealField, 9>; // row-major, M[3j+k] = M_jk

RealField zero_field(const Grid& g);

// Spectral vector calculus on grid fields. Index convention throughout:
// (grad v)_{jk} = d_k v_j (row = component, column = derivative), and the
// divergence of a tensor contracts the column: (div M)_j = d_m M_{jm}.
VectorField gradient(Transformer& tr, const RealField& f);
TensorField jacobian(Transformer& tr, const VectorField& v);
RealField divergence(Transformer& tr, const VectorField& v);
VectorField divergence_tensor(Transformer& tr, const TensorField& M);

} // namespace viscolab
