// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viscolab/config.hpp"
#include "viscolab/io.hpp"
#include "viscolab/params.hpp"

namespace viscolab {

// Preset names, in the order run_preset accepts them.
std::vector<std::string> preset_names();

// Default configuration of a named preset. Throws ConfigError on unknown names.
ExperimentConfig preset_config(const std::string& name);

// Runs the experiment the config describes, writes every CSV plus manifest.json
// under cfg.out_dir (default root / preset when empty), and returns the manifest.
RunManifest run_experiment(const ExperimentConfig& cfg);

// preset_config + run_experiment.
RunManifest run_preset(const std::string& name);

// Randomized comparison of the structured solution-operator application against
// the dense matrix-exponential oracle: n_random draws with log-uniform |xi| in
// [1e-3, 50] and uniform t in [0, 10], plus n_coalesced draws within 1e-6 of
// each branch-coalescence radius. Errors are relative to the input amplitude.
struct OracleSweep {
    double max_rel_err = 0.0;
    double worst_k = 0.0;
    double worst_t = 0.0;
    int samples = 0;
};
OracleSweep symbol_oracle_sweep(const FluidParams& p, int n_random, int n_coalesced,
                                std::uint64_t seed);

} // namespace viscolab
