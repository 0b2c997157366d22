// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "viscolab/spectral.hpp"
#include "viscolab/symbol.hpp"

namespace viscolab {

// Physical-space perturbation state (phi, w, G) about the rest state (1, 0, I).
struct PerturbationState {
    Grid grid;
    RealField phi;
    VectorField w;
    TensorField G;
};

// Half-spectrum state; component layout matches the symbol module
// (idx_phi, idx_w(j), idx_G(j,k)).
struct SpectralState {
    Grid grid;
    std::array<SpecField, 13> comp;
};

PerturbationState zero_state(const Grid& g);
SpectralState zero_spectral_state(const Grid& g);

SpectralState to_spectral(Transformer& tr, const PerturbationState& u);
PerturbationState from_spectral(Transformer& tr, const SpectralState& s);

// Gathers the 13 spectral components at one half-spectrum entry into the dense
// vector the symbol module acts on, and scatters it back.
Vec13 gather_mode(const SpectralState& s, std::ptrdiff_t idx);
void scatter_mode(SpectralState& s, std::ptrdiff_t idx, const Vec13& v);

bool all_finite(const PerturbationState& u);

// l2 norm over all 13 components with a |k|^{2*order} derivative weight.
double state_l2(const SpectralState& s, int order = 0);

// ||grad^m u||_{L2} of the full state (m <= 4 is the supported range).
inline double sobolev_seminorm(const SpectralState& s, int m) { return state_l2(s, m); }

// l2 norm of the componentwise difference (states on one grid).
double state_l2_diff(const SpectralState& a, const SpectralState& b);

} // namespace viscolab
