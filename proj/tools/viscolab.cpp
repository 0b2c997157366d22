// SPDX-License-Identifier: Apache-2.0
//
// viscolab: spectral laboratory for a compressible viscoelastic fluid model.
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
// 3 the computation left its validated regime.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "viscolab/errors.hpp"
#include "viscolab/presets.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"viscolab: closed-form semigroup laboratory for a compressible "
                 "viscoelastic system"};
    app.require_subcommand(1);

    std::string name, config_path, out_dir;
    int threads = 0;

    CLI::App* sp = app.add_subcommand("preset", "run a named preset experiment");
    sp->add_option("name", name, "preset name (see 'viscolab list')")->required();
    sp->add_option("--out", out_dir, "output directory (default: $VISCOLAB_OUT/<preset>)");
    sp->add_option("--threads", threads, "FFT worker threads");

    CLI::App* sr = app.add_subcommand("run", "run an experiment described by a config file");
    sr->add_option("--config", config_path, "path to the config file")->required();
    sr->add_option("--out", out_dir, "output directory override");
    sr->add_option("--threads", threads, "FFT worker threads");

    CLI::App* sl = app.add_subcommand("list", "list the available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sl->parsed()) {
            for (const std::string& n : viscolab::preset_names()) std::cout << n << "\n";
            return 0;
        }

        viscolab::ExperimentConfig cfg =
            sp->parsed() ? viscolab::preset_config(name) : viscolab::parse_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;

        const viscolab::RunManifest m = viscolab::run_experiment(cfg);
        for (const viscolab::CheckResult& c : m.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
                      << "\n";
        std::cout << "wrote " << m.files.size() << " files, run "
                  << (m.passed() ? "passed" : "FAILED") << "\n";
        return m.passed() ? 0 : 1;
    } catch (const viscolab::ConfigError& e) {
        // messages already begin with "config error"
        std::cout << e.what() << "\n";
        return 2;
    } catch (const viscolab::RegimeError& e) {
        std::cout << "regime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
        return 3;
    }
}
