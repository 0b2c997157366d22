// SPDX-License-Identifier: Apache-2.0
#include "viscolab/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "viscolab/bands.hpp"
#include "viscolab/dispersion.hpp"
#include "viscolab/errors.hpp"
#include "viscolab/evolution.hpp"
#include "viscolab/rates.hpp"

namespace viscolab {

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<double> log_times(double t_lo, double t_hi, int n)
{
    std::vector<double> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        t[static_cast<size_t>(i)] = t_lo * std::pow(t_hi / t_lo, double(i) / (n - 1));
    return t;
}

std::vector<double> lin_times(double t_lo, double t_hi, int n)
{
    std::vector<double> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        t[static_cast<size_t>(i)] = t_lo + (t_hi - t_lo) * double(i) / (n - 1);
    return t;
}

double tol_or(const ExperimentConfig& cfg, const std::string& key, double fallback)
{
    const auto it = cfg.tolerances.find(key);
    return it == cfg.tolerances.end() ? fallback : it->second;
}

void add_check(RunManifest& m, const std::string& name, bool pass, const std::string& detail)
{
    m.checks.push_back({name, pass, detail});
}

RadialData make_radial_data(const DataRecipe& d)
{
    if (d.family == "monopole") return monopole_data(d.amp_phi, d.amp_w, d.sigma);
    if (d.family == "gaussian-control")
        return gaussian_potential_data(d.amp_phi, d.amp_w, d.sigma);
    throw ConfigError("config error: data.family '" + d.family + "' has no radial realization");
}

CsvTable norms_table(const Trajectory& traj)
{
    CsvTable t;
    t.header = {"t",     "u_l1",     "u_l2",     "u_linf",   "U_l1",     "U_l2",
                "U_linf", "grad0_l2", "grad1_l2", "grad2_l2", "grad3_l2", "h3"};
    for (const NormRecord& r : traj.norms)
        t.rows.push_back({r.t, r.u_l1, r.u_l2, r.u_linf, r.U_l1, r.U_l2, r.U_linf,
                          r.grad_l2[0], r.grad_l2[1], r.grad_l2[2], r.grad_l2[3], r.h3});
    return t;
}

CsvTable residuals_table(const Trajectory& traj)
{
    CsvTable t;
    t.header = {"t", "r_det", "r_piola", "r_div", "trace_drift"};
    for (const ResidualRecord& r : traj.residuals)
        t.rows.push_back({r.t, r.r_det, r.r_piola, r.r_div, r.trace_drift});
    return t;
}

CsvTable local_slope_table(const RateFit& f)
{
    CsvTable t;
    t.header = {"t", "slope"};
    for (size_t i = 0; i < f.local_t.size(); ++i)
        t.rows.push_back({f.local_t[i], f.local_slope[i]});
    return t;
}

void emit(RunManifest& m, const std::filesystem::path& dir, const std::string& name,
          const CsvTable& table)
{
    write_csv(dir / name, table);
    m.files.push_back(name);
}

void put_fit(RunManifest& m, const std::string& prefix, const RateFit& f)
{
    m.metrics[prefix + "_exponent"] = f.exponent;
    m.metrics[prefix + "_prefactor"] = f.prefactor;
    m.metrics[prefix + "_rms"] = f.rms;
    m.metrics[prefix + "_r2"] = f.r2;
    m.metrics[prefix + "_window_lo"] = f.t_lo;
    m.metrics[prefix + "_window_hi"] = f.t_hi;
}

std::string within(const std::string& what, double value, double target, double tol)
{
    return what + " = " + format_double(value) + ", target " + format_double(target) +
           " +/- " + format_double(tol);
}

// --- preset bodies ------------------------------------------------------

void run_dispersion(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                    RunManifest& m)
{
    const FluidParams& p = cfg.params;
    CsvTable t;
    t.header = {"k",      "re_lam_p", "im_lam_p", "re_lam_m", "im_lam_m", "re_mu_p",
                "im_mu_p", "re_mu_m",  "im_mu_m",  "coal_lam", "coal_mu"};
    double worst_vieta = 0.0;
    const auto ks = log_times(1e-3, 1e3, 601);
    for (double k : ks) {
        const BranchPair l = lambda_pm(p, k);
        const BranchPair u = mu_pm(p, k);
        t.rows.push_back({k, l.plus.real(), l.plus.imag(), l.minus.real(), l.minus.imag(),
                          u.plus.real(), u.plus.imag(), u.minus.real(), u.minus.imag(),
                          l.coalesced ? 1.0 : 0.0, u.coalesced ? 1.0 : 0.0});
        const auto res = vieta_residual(p, k);
        const double scale = std::max(1.0, k * k * k * k);
        worst_vieta = std::max(worst_vieta, std::max(res[0], res[1]) / scale);
    }
    emit(m, dir, "branches.csv", t);

    const BandThresholds th = band_thresholds(p);
    m.metrics["coalescence_radius_lambda"] = coalescence_radius(p, BranchFamily::Lambda);
    m.metrics["coalescence_radius_mu"] = coalescence_radius(p, BranchFamily::Mu);
    m.metrics["M1"] = th.M1;
    m.metrics["M2"] = th.M2;
    m.metrics["max_vieta_residual"] = worst_vieta;

    const double vtol = tol_or(cfg, "vieta_tol", 1e-10);
    add_check(m, "vieta-residual", worst_vieta <= vtol,
              "max scaled residual " + format_double(worst_vieta) + " <= " +
                  format_double(vtol));
}

void run_bands(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunManifest& m)
{
    const FluidParams& p = cfg.params;
    const CutoffFamily f = cutoff_family(p);
    CsvTable t;
    t.header = {"k", "low", "mid", "high", "sum"};
    double worst = 0.0;
    bool in_range = true;
    const auto ks = lin_times(0.0, 3.0 * f.M2, 601);
    for (double k : ks) {
        const BandWeights w = cutoff_values(f, k);
        const double sum = w.low + w.mid + w.high;
        t.rows.push_back({k, w.low, w.mid, w.high, sum});
        worst = std::max(worst, std::abs(sum - 1.0));
        for (double v : {w.low, w.mid, w.high})
            if (v < -1e-15 || v > 1.0 + 1e-15) in_range = false;
    }
    emit(m, dir, "bands.csv", t);

    m.metrics["M1"] = f.M1;
    m.metrics["M2"] = f.M2;
    m.metrics["max_partition_error"] = worst;
    add_check(m, "partition-of-unity", worst <= 1e-12,
              "max |low+mid+high-1| = " + format_double(worst));
    add_check(m, "weights-in-range", in_range, "all cutoff values within [0, 1]");
}

void run_duhamel(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunManifest& m)
{
    const int nodes = static_cast<int>(tol_or(cfg, "nodes", 256));
    const double t_max = cfg.schedule.t_hi;
    const DuhamelCheck c = duhamel_bound_check(t_max, nodes);
    const DuhamelCheck c2 = duhamel_bound_check(t_max, 2 * nodes);

    CsvTable t;
    t.header = {"t", "ratio"};
    for (size_t i = 0; i < c.t.size(); ++i) t.rows.push_back({c.t[i], c.ratio[i]});
    emit(m, dir, "ratio.csv", t);

    const double doubling =
        std::abs(c.sup_ratio - c2.sup_ratio) / std::max(c2.sup_ratio, 1e-300);
    m.metrics["sup_ratio"] = c.sup_ratio;
    m.metrics["ratio_at_tmax"] = c.ratio_at_tmax;
    m.metrics["node_doubling_delta"] = doubling;

    add_check(m, "sup-ratio-window", c.sup_ratio >= 0.95 && c.sup_ratio <= 1.05,
              "sup I(t)/sqrt(1+t) = " + format_double(c.sup_ratio) + " in [0.95, 1.05]");
    add_check(m, "node-doubling-stability", doubling < 0.01,
              "relative change on node doubling = " + format_double(doubling));
}

void run_symbol_oracle(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                       RunManifest& m)
{
    const int n_random = std::max(2, cfg.schedule.samples);
    const OracleSweep s = symbol_oracle_sweep(cfg.params, n_random, 50, cfg.data.seed);

    CsvTable t;
    t.header = {"samples", "max_rel_err", "worst_k", "worst_t"};
    t.rows.push_back({double(s.samples), s.max_rel_err, s.worst_k, s.worst_t});
    emit(m, dir, "sweep.csv", t);

    m.metrics["max_rel_err"] = s.max_rel_err;
    m.metrics["worst_k"] = s.worst_k;
    m.metrics["worst_t"] = s.worst_t;
    const double otol = tol_or(cfg, "oracle_tol", 1e-8);
    add_check(m, "oracle-max-error", s.max_rel_err <= otol,
              "max relative error " + format_double(s.max_rel_err) + " <= " +
                  format_double(otol) + " over " + std::to_string(s.samples) + " samples");
}

void run_l1_growth(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                   RunManifest& m)
{
    const auto times = log_times(cfg.schedule.t_lo, cfg.schedule.t_hi, cfg.schedule.samples);
    const RadialData data = make_radial_data(cfg.data);
    const GrowthResult g = l1_growth_experiment(cfg.params, data, times, LowfreqGate{});

    emit(m, dir, "norms.csv", norms_table(g.traj));
    emit(m, dir, "local_slopes_l1.csv", local_slope_table(g.l1_fit));

    put_fit(m, "l1", g.l1_fit);
    put_fit(m, "l2", g.l2_fit);
    put_fit(m, "linf", g.linf_fit);
    m.metrics["gate_phi_margin"] = g.check.phi_margin;
    m.metrics["gate_grad_margin"] = g.check.grad_margin;
    m.metrics["l1_stabilization_time"] = stabilization_time(g.l1_fit, 0.1);

    add_check(m, "lowfreq-gate", g.check.pass,
              "phi margin " + format_double(g.check.phi_margin) + ", grad margin " +
                  format_double(g.check.grad_margin));
    const double etol = tol_or(cfg, "l1_exponent_tol", 0.08);
    add_check(m, "l1-exponent", std::abs(g.l1_fit.exponent - 0.5) <= etol,
              within("L1 growth exponent", g.l1_fit.exponent, 0.5, etol));

    // negative control: the mean-zero potential family must be rejected
    const DataRecipe ctrl_recipe{.family = "gaussian-control",
                                 .amp_phi = cfg.data.amp_phi,
                                 .amp_w = cfg.data.amp_w,
                                 .sigma = cfg.data.sigma,
                                 .epsilon = cfg.data.epsilon,
                                 .k_lo = cfg.data.k_lo,
                                 .k_hi = cfg.data.k_hi,
                                 .seed = cfg.data.seed};
    const RadialData ctrl = make_radial_data(ctrl_recipe);
    const LowfreqGate gate{};
    std::vector<double> kgrid;
    for (int i = 1; i <= gate.samples; ++i)
        kgrid.push_back(gate.r * double(i) / gate.samples);
    const LowfreqCheck cc =
        lowfreq_condition_check(lowfreq_samples(ctrl, kgrid), gate.r, gate.c0, gate.c1,
                                gate.eta0);
    m.metrics["control_phi_margin"] = cc.phi_margin;
    add_check(m, "control-data-rejected", !cc.pass,
              "mean-zero control gate pass = " + std::string(cc.pass ? "true" : "false"));
}

void run_l2_decay(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                  RunManifest& m)
{
    const auto times = log_times(cfg.schedule.t_lo, cfg.schedule.t_hi, cfg.schedule.samples);
    const RadialData data = make_radial_data(cfg.data);
    const Trajectory traj = evolve_linear_radial(cfg.params, data, times);
    emit(m, dir, "norms.csv", norms_table(traj));

    std::vector<double> t, l2, g1;
    for (const NormRecord& r : traj.norms) {
        t.push_back(r.t);
        l2.push_back(r.grad_l2[0]);
        g1.push_back(r.grad_l2[1]);
    }
    const RateFit f0 = fit_power_law(t, l2);
    const RateFit f1 = fit_power_law(t, g1);
    emit(m, dir, "local_slopes_l2.csv", local_slope_table(f0));
    put_fit(m, "l2", f0);
    put_fit(m, "grad1_l2", f1);

    const double tol0 = tol_or(cfg, "l2_exponent_tol", 0.08);
    const double tol1 = tol_or(cfg, "l2_grad_exponent_tol", 0.12);
    add_check(m, "l2-exponent", std::abs(f0.exponent - (-0.75)) <= tol0,
              within("L2 decay exponent", f0.exponent, -0.75, tol0));
    add_check(m, "gradient-l2-exponent", std::abs(f1.exponent - (-1.25)) <= tol1,
              within("grad L2 decay exponent", f1.exponent, -1.25, tol1));
}

void run_linf_decay(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                    RunManifest& m)
{
    const auto times = log_times(cfg.schedule.t_lo, cfg.schedule.t_hi, cfg.schedule.samples);
    const RadialData data = make_radial_data(cfg.data);
    const Trajectory traj = evolve_linear_radial(cfg.params, data, times);
    emit(m, dir, "norms.csv", norms_table(traj));

    std::vector<double> t, li;
    for (const NormRecord& r : traj.norms) {
        t.push_back(r.t);
        li.push_back(r.u_linf);
    }
    const RateFit f = fit_power_law(t, li);
    emit(m, dir, "local_slopes_linf.csv", local_slope_table(f));
    put_fit(m, "linf", f);

    const double tol = tol_or(cfg, "linf_exponent_tol", 0.15);
    add_check(m, "linf-exponent", std::abs(f.exponent - (-2.0)) <= tol,
              within("Linf decay exponent", f.exponent, -2.0, tol));
}

void run_highfreq(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                  RunManifest& m)
{
    const FluidParams& p = cfg.params;
    const Grid g = make_grid(cfg.grid.n, cfg.grid.r);
    SpectralState s0 = random_band_state(g, cfg.data.k_lo, cfg.data.k_hi, cfg.data.seed);
    s0 = project_band(s0, cutoff_family(p), Band::Pinf);
    // restrict to the solenoidal sector: its narrow-band flow is one exponential
    // envelope (rate nu k^2 / 2), so the semilog fit is meaningful
    s0 = helmholtz(s0, Helm::P);

    const auto times = lin_times(0.0, cfg.schedule.t_hi, cfg.schedule.samples);
    CsvTable t;
    t.header = {"t", "l2"};
    std::vector<double> ts, vs;
    for (double tt : times) {
        const double v = state_l2(evolve_linear_grid(p, s0, tt));
        t.rows.push_back({tt, v});
        ts.push_back(tt);
        vs.push_back(v);
    }
    emit(m, dir, "decay.csv", t);

    const double fit_lo = cfg.schedule.t_lo; // semilog window start
    const RateFit f = fit_exponential(ts, vs, fit_lo, cfg.schedule.t_hi);
    const double bound = min_branch_decay(p, cfg.data.k_lo, cfg.data.k_hi);
    m.metrics["slope"] = f.exponent;
    m.metrics["r2"] = f.r2;
    m.metrics["band_min_decay"] = bound;

    add_check(m, "decay-slope-negative", f.exponent < 0.0,
              "semilog slope = " + format_double(f.exponent));
    const double r2tol = tol_or(cfg, "r2_min", 0.99);
    add_check(m, "semilog-r2", f.r2 >= r2tol,
              "R^2 = " + format_double(f.r2) + " >= " + format_double(r2tol));
    add_check(m, "rate-vs-band-bound", -f.exponent >= 0.5 * bound,
              "rate " + format_double(-f.exponent) + " >= 0.5 * " + format_double(bound));
}

void gaussian_bump_fields(const Grid& g, double eps, double sigma, VectorField& psi0,
                          VectorField& v0)
{
    const std::array<double, 3> a{1.0, 0.5, -0.3};
    const std::array<double, 3> b{0.2, -1.0, 0.4};
    for (int j = 0; j < 3; ++j) {
        psi0[static_cast<size_t>(j)] = zero_field(g);
        v0[static_cast<size_t>(j)] = zero_field(g);
    }
    for (int i0 = 0; i0 < g.N; ++i0)
        for (int i1 = 0; i1 < g.N; ++i1)
            for (int i2 = 0; i2 < g.N; ++i2) {
                const double x = g.x(i0), y = g.x(i1), z = g.x(i2);
                const double e = std::exp(-(x * x + y * y + z * z) / (2.0 * sigma * sigma));
                const size_t i = static_cast<size_t>(g.ridx(i0, i1, i2));
                for (int j = 0; j < 3; ++j) {
                    psi0[static_cast<size_t>(j)][i] = eps * a[static_cast<size_t>(j)] * e;
                    v0[static_cast<size_t>(j)][i] = eps * b[static_cast<size_t>(j)] * e;
                }
            }
}

void run_nonlinear_box(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                       RunManifest& m)
{
    const FluidParams& p = cfg.params;
    const Grid g = make_grid(cfg.grid.n, cfg.grid.r);
    Transformer tr(g);
    VectorField psi0, v0;
    gaussian_bump_fields(g, cfg.data.epsilon, cfg.data.sigma, psi0, v0);

    // main run: invariants and norm history over [0, T]
    NonlinearRunConfig rc;
    rc.T = cfg.schedule.T;
    rc.dt = cfg.schedule.dt;
    rc.samples = cfg.schedule.samples;
    const Trajectory traj = evolve_nonlinear(tr, p, psi0, v0, rc);
    emit(m, dir, "norms.csv", norms_table(traj));
    emit(m, dir, "residuals.csv", residuals_table(traj));

    const ResidualRecord& r0 = traj.residuals.front();
    double det_max = 0.0, piola_max = 0.0, div_max = 0.0, drift_max = 0.0, h3_max = 0.0;
    for (const ResidualRecord& r : traj.residuals) {
        det_max = std::max(det_max, r.r_det);
        piola_max = std::max(piola_max, r.r_piola);
        div_max = std::max(div_max, r.r_div);
        drift_max = std::max(drift_max, r.trace_drift);
    }
    for (const NormRecord& r : traj.norms) h3_max = std::max(h3_max, r.h3);

    const double floor_det = std::max(r0.r_det, 1e-14);
    const double floor_piola = std::max(r0.r_piola, 1e-14);
    const double floor_div = std::max(r0.r_div, 1e-14);
    m.metrics["r_det_max"] = det_max;
    m.metrics["r_piola_max"] = piola_max;
    m.metrics["r_div_max"] = div_max;
    m.metrics["trace_drift_max"] = drift_max;
    m.metrics["h3_initial"] = traj.norms.front().h3;
    m.metrics["h3_max"] = h3_max;

    add_check(m, "residual-floor",
              det_max <= 10.0 * floor_det && piola_max <= 10.0 * floor_piola &&
                  div_max <= 10.0 * floor_div,
              "max/floor: det " + format_double(det_max / floor_det) + ", piola " +
                  format_double(piola_max / floor_piola) + ", div " +
                  format_double(div_max / floor_div) + " (allowed 10)");
    const double dtol = tol_or(cfg, "trace_drift_tol", 1e-11);
    add_check(m, "trace-conservation", drift_max <= dtol,
              "max relative trace drift " + format_double(drift_max) + " <= " +
                  format_double(dtol));
    add_check(m, "h3-bound", h3_max <= 1.5 * traj.norms.front().h3,
              "max H3 = " + format_double(h3_max) + " vs 1.5 * initial = " +
                  format_double(1.5 * traj.norms.front().h3));

    // short checkpointed run: nonlinear trajectory against the closed-form linear flow
    NonlinearRunConfig rc2;
    rc2.T = std::min(5.0, cfg.schedule.T);
    rc2.dt = cfg.schedule.dt;
    rc2.samples = 6;
    rc2.keep_checkpoints = true;
    const Trajectory short_traj = evolve_nonlinear(tr, p, psi0, v0, rc2);

    CsvTable lw;
    lw.header = {"t", "rel_diff"};
    double worst = 0.0;
    const SpectralState& s_init = short_traj.checkpoints.front().second;
    for (const auto& [tc, sc] : short_traj.checkpoints) {
        const SpectralState lin = evolve_linear_grid(p, s_init, tc);
        const double denom = std::max(state_l2(sc), 1e-300);
        const double rel = state_l2_diff(sc, lin) / denom;
        lw.rows.push_back({tc, rel});
        worst = std::max(worst, rel);
    }
    emit(m, dir, "linear_window.csv", lw);
    m.metrics["linear_window_max_rel"] = worst;
    const double ltol = tol_or(cfg, "linear_window_tol", 10.0 * cfg.data.epsilon);
    add_check(m, "linear-window", worst <= ltol,
              "max relative nonlinear-linear gap " + format_double(worst) + " <= " +
                  format_double(ltol));
}

void run_custom(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunManifest& m)
{
    if (cfg.backend == "radial") {
        const auto times =
            log_times(std::max(cfg.schedule.t_lo, 1e-3), cfg.schedule.t_hi,
                      cfg.schedule.samples);
        const Trajectory traj = evolve_linear_radial(cfg.params, make_radial_data(cfg.data),
                                                     times);
        emit(m, dir, "norms.csv", norms_table(traj));
        return;
    }
    if (cfg.backend == "grid") {
        const Grid g = make_grid(cfg.grid.n, cfg.grid.r);
        const SpectralState s0 =
            random_band_state(g, cfg.data.k_lo, cfg.data.k_hi, cfg.data.seed);
        const auto times = lin_times(cfg.schedule.t_lo, cfg.schedule.t_hi,
                                     cfg.schedule.samples);
        CsvTable t;
        t.header = {"t", "l2"};
        for (double tt : times) t.rows.push_back({tt, state_l2(evolve_linear_grid(cfg.params, s0, tt))});
        emit(m, dir, "decay.csv", t);
        return;
    }
    // nonlinear
    const Grid g = make_grid(cfg.grid.n, cfg.grid.r);
    Transformer tr(g);
    VectorField psi0, v0;
    gaussian_bump_fields(g, cfg.data.epsilon, cfg.data.sigma, psi0, v0);
    NonlinearRunConfig rc;
    rc.T = cfg.schedule.T;
    rc.dt = cfg.schedule.dt;
    rc.samples = cfg.schedule.samples;
    const Trajectory traj = evolve_nonlinear(tr, cfg.params, psi0, v0, rc);
    emit(m, dir, "norms.csv", norms_table(traj));
    emit(m, dir, "residuals.csv", residuals_table(traj));
}

void echo_config(const ExperimentConfig& cfg, RunManifest& m)
{
    auto& e = m.config_echo;
    e["preset"] = cfg.preset;
    e["backend"] = cfg.backend;
    e["params.nu"] = format_double(cfg.params.nu);
    e["params.nu_prime"] = format_double(cfg.params.nu_prime);
    e["params.beta"] = format_double(cfg.params.beta);
    e["params.gamma"] = format_double(cfg.params.gamma);
    e["params.pressure_quadratic"] = format_double(cfg.params.pressure_quadratic);
    e["data.family"] = cfg.data.family;
    e["data.amp_phi"] = format_double(cfg.data.amp_phi);
    e["data.amp_w"] = format_double(cfg.data.amp_w);
    e["data.sigma"] = format_double(cfg.data.sigma);
    e["data.epsilon"] = format_double(cfg.data.epsilon);
    e["data.k_lo"] = format_double(cfg.data.k_lo);
    e["data.k_hi"] = format_double(cfg.data.k_hi);
    e["data.seed"] = std::to_string(cfg.data.seed);
    e["run.t_lo"] = format_double(cfg.schedule.t_lo);
    e["run.t_hi"] = format_double(cfg.schedule.t_hi);
    e["run.samples"] = std::to_string(cfg.schedule.samples);
    e["run.T"] = format_double(cfg.schedule.T);
    e["run.dt"] = format_double(cfg.schedule.dt);
    e["run.threads"] = std::to_string(cfg.threads);
    e["grid.n"] = std::to_string(cfg.grid.n);
    e["grid.r"] = format_double(cfg.grid.r);
    for (const auto& [k, v] : cfg.tolerances) e["tolerances." + k] = format_double(v);
}

} // namespace

std::vector<std::string> preset_names()
{
    return {"dispersion",     "bands",        "duhamel",      "symbol-oracle",
            "thm32-l1-growth", "prop44-l2-decay", "linfty-decay", "highfreq-decay",
            "nonlinear-box"};
}

ExperimentConfig preset_config(const std::string& name)
{
    ExperimentConfig cfg;
    cfg.preset = name;
    if (name == "dispersion" || name == "bands") return cfg;
    if (name == "duhamel") {
        cfg.schedule.t_lo = 0.0;
        cfg.schedule.t_hi = 1e4;
        return cfg;
    }
    if (name == "symbol-oracle") {
        cfg.schedule.samples = 1000;
        return cfg;
    }
    if (name == "thm32-l1-growth" || name == "prop44-l2-decay" || name == "linfty-decay") {
        cfg.backend = "radial";
        cfg.schedule.t_lo = 100.0;
        cfg.schedule.t_hi = 1000.0;
        cfg.schedule.samples = 41;
        return cfg;
    }
    if (name == "highfreq-decay") {
        cfg.backend = "grid";
        cfg.schedule.t_lo = 2.0; // fit window start
        cfg.schedule.t_hi = 20.0;
        cfg.schedule.samples = 21;
        cfg.data.family = "band";
        cfg.data.k_lo = 0.9; // narrow shell: single decay scale
        cfg.data.k_hi = 1.1;
        return cfg;
    }
    if (name == "nonlinear-box") {
        cfg.backend = "nonlinear";
        cfg.data.sigma = 2.0;
        cfg.data.epsilon = 1e-3;
        cfg.schedule.T = 10.0;
        cfg.schedule.dt = 0.05;
        cfg.schedule.samples = 21;
        return cfg;
    }
    throw ConfigError("config error: unknown preset '" + name + "'");
}

RunManifest run_experiment(const ExperimentConfig& cfg)
{
    validate_config(cfg);
    const std::filesystem::path dir =
        cfg.out_dir.empty() ? default_out_root() / cfg.preset : cfg.out_dir;
    std::filesystem::create_directories(dir);
    set_fftw_threads(cfg.threads);

    RunManifest m;
    m.preset = cfg.preset;
    m.version = kVersion;
    m.started = iso_timestamp_now();
    echo_config(cfg, m);

    if (cfg.preset == "dispersion")
        run_dispersion(cfg, dir, m);
    else if (cfg.preset == "bands")
        run_bands(cfg, dir, m);
    else if (cfg.preset == "duhamel")
        run_duhamel(cfg, dir, m);
    else if (cfg.preset == "symbol-oracle")
        run_symbol_oracle(cfg, dir, m);
    else if (cfg.preset == "thm32-l1-growth")
        run_l1_growth(cfg, dir, m);
    else if (cfg.preset == "prop44-l2-decay")
        run_l2_decay(cfg, dir, m);
    else if (cfg.preset == "linfty-decay")
        run_linf_decay(cfg, dir, m);
    else if (cfg.preset == "highfreq-decay")
        run_highfreq(cfg, dir, m);
    else if (cfg.preset == "nonlinear-box")
        run_nonlinear_box(cfg, dir, m);
    else if (cfg.preset == "custom")
        run_custom(cfg, dir, m);
    else
        throw ConfigError("config error: unknown preset '" + cfg.preset + "'");

    m.finished = iso_timestamp_now();
    write_manifest(dir / "manifest.json", m);
    m.files.push_back("manifest.json");
    return m;
}

RunManifest run_preset(const std::string& name)
{
    return run_experiment(preset_config(name));
}

OracleSweep symbol_oracle_sweep(const FluidParams& p, int n_random, int n_coalesced,
                                std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> nd(0.0, 1.0);

    OracleSweep out;
    auto probe = [&](double k, double t) {
        std::array<double, 3> dir{nd(rng), nd(rng), nd(rng)};
        double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        if (n < 1e-12) {
            dir = {1.0, 0.0, 0.0};
            n = 1.0;
        }
        const std::array<double, 3> xi{k * dir[0] / n, k * dir[1] / n, k * dir[2] / n};
        Eigen::Vector3cd psi, w;
        for (int c = 0; c < 3; ++c) {
            psi(c) = cplx{nd(rng), nd(rng)};
            w(c) = cplx{nd(rng), nd(rng)};
        }
        const Vec13 v = make_constraint_vector(psi, w, xi).v;
        const Vec13 a = apply_symbol(p, xi, t, PhiFun::Exp, v);
        const Vec13 b = symbol_oracle(p, xi, t) * v;
        const double err = (a - b).norm() / v.norm();
        if (err > out.max_rel_err) {
            out.max_rel_err = err;
            out.worst_k = k;
            out.worst_t = t;
        }
        ++out.samples;
    };

    const double lk_lo = std::log(1e-3), lk_hi = std::log(50.0);
    for (int i = 0; i < n_random; ++i)
        probe(std::exp(lk_lo + (lk_hi - lk_lo) * uni(rng)), 10.0 * uni(rng));

    for (const BranchFamily fam : {BranchFamily::Lambda, BranchFamily::Mu}) {
        const double kc = coalescence_radius(p, fam);
        for (int i = 0; i < n_coalesced; ++i)
            probe(kc + 1e-6 * (2.0 * uni(rng) - 1.0), 10.0 * uni(rng));
    }
    return out;
}

} // namespace viscolab
