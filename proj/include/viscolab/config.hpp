// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "viscolab/params.hpp"

namespace viscolab {

// Initial-data recipe. family selects the construction:
//   monopole          radially symmetric low-frequency data (the growth witness)
//   gaussian-control  mean-zero radial control (expected to fail the growth gate)
//   band              random spectral band state on the grid backend
struct DataRecipe {
    std::string family = "monopole";
    double amp_phi = 1.0;
    double amp_w = 1.0;
    double sigma = 1.0;
    double epsilon = 1e-3; // nonlinear-box amplitude scale
    double k_lo = 0.6;     // band family support
    double k_hi = 1.5;
    std::uint64_t seed = 20260815;
};

// Radial/grid runs sample [t_lo, t_hi]; the nonlinear backend integrates to T
// with step dt.
struct TimeSchedule {
    double t_lo = 100.0;
    double t_hi = 1000.0;
    int samples = 41;
    double T = 10.0;
    double dt = 0.05;
};

struct GridSpec {
    int n = 64;
    double r = 16.0; // half-width of the periodic box [-r, r)^3
};

struct ExperimentConfig {
    std::string preset = "custom";
    FluidParams params;
    DataRecipe data;
    std::string backend = "radial"; // radial | grid | nonlinear
    TimeSchedule schedule;
    GridSpec grid;
    std::map<std::string, double> tolerances; // per-check overrides, preset fills defaults
    std::filesystem::path out_dir;            // empty: default root / preset name
    int threads = 1;
};

// Strict sectioned key-value format ([params] [data] [run] [grid] [tolerances]
// [output]). Unknown sections or keys are rejected; every violation in the file
// is listed in one ConfigError, with line numbers for syntax errors.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& source);

// Re-runs the value checks on an assembled config (the CLI applies overrides
// after parsing). Throws ConfigError listing every violation.
void validate_config(const ExperimentConfig& cfg);

} // namespace viscolab
