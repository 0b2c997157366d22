// SPDX-License-Identifier: Apache-2.0
#include "viscolab/state.hpp"

#include <cmath>

namespace viscolab {

PerturbationState zero_state(const Grid& g)
{
    PerturbationState u;
    u.grid = g;
    u.phi = zero_field(g);
    for (auto& c : u.w) c = zero_field(g);
    for (auto& c : u.G) c = zero_field(g);
    return u;
}

SpectralState zero_spectral_state(const Grid& g)
{
    SpectralState s;
    s.grid = g;
    for (auto& c : s.comp) c.assign(static_cast<size_t>(g.n_spec()), cplx{0.0, 0.0});
    return s;
}

SpectralState to_spectral(Transformer& tr, const PerturbationState& u)
{
    SpectralState s;
    s.grid = u.grid;
    tr.forward(u.phi, s.comp[static_cast<size_t>(idx_phi)]);
    for (int j = 0; j < 3; ++j)
        tr.forward(u.w[static_cast<size_t>(j)], s.comp[static_cast<size_t>(idx_w(j))]);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            tr.forward(u.G[static_cast<size_t>(3 * j + k)],
                       s.comp[static_cast<size_t>(idx_G(j, k))]);
    return s;
}

PerturbationState from_spectral(Transformer& tr, const SpectralState& s)
{
    PerturbationState u;
    u.grid = s.grid;
    tr.inverse(s.comp[static_cast<size_t>(idx_phi)], u.phi);
    for (int j = 0; j < 3; ++j)
        tr.inverse(s.comp[static_cast<size_t>(idx_w(j))], u.w[static_cast<size_t>(j)]);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            tr.inverse(s.comp[static_cast<size_t>(idx_G(j, k))],
                       u.G[static_cast<size_t>(3 * j + k)]);
    return u;
}

Vec13 gather_mode(const SpectralState& s, std::ptrdiff_t idx)
{
    Vec13 v;
    for (int c = 0; c < 13; ++c) v(c) = s.comp[static_cast<size_t>(c)][static_cast<size_t>(idx)];
    return v;
}

void scatter_mode(SpectralState& s, std::ptrdiff_t idx, const Vec13& v)
{
    for (int c = 0; c < 13; ++c) s.comp[static_cast<size_t>(c)][static_cast<size_t>(idx)] = v(c);
}

bool all_finite(const PerturbationState& u)
{
    auto ok = [](const RealField& f) {
        for (double v : f)
            if (!std::isfinite(v)) return false;
        return true;
    };
    if (!ok(u.phi)) return false;
    for (const auto& c : u.w)
        if (!ok(c)) return false;
    for (const auto& c : u.G)
        if (!ok(c)) return false;
    return true;
}

double state_l2(const SpectralState& s, int order)
{
    std::vector<const SpecField*> comps;
    comps.reserve(13);
    for (const auto& c : s.comp) comps.push_back(&c);
    return spectral_l2(s.grid, comps, order);
}

double state_l2_diff(const SpectralState& a, const SpectralState& b)
{
    SpectralState d = a;
    for (int c = 0; c < 13; ++c) {
        auto& dc = d.comp[static_cast<size_t>(c)];
        const auto& bc = b.comp[static_cast<size_t>(c)];
        for (size_t i = 0; i < dc.size(); ++i) dc[i] -= bc[i];
    }
    return state_l2(d, 0);
}

} // namespace viscolab
