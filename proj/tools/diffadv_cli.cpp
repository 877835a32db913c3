// SPDX-License-Identifier: Apache-2.0
//
// diffadv: channel modelling and link simulation for diffusion-advection particle communication
// Copyright (C) 2026 The diffadv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "diffadv/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
    using namespace diffadv;

    CLI::App app{"diffadv: diffusion-advection channel analysis and link simulation"};
    app.set_version_flag("--version", kVersion);

    std::string sub;
    std::string config_path, snr, ebn0, tsym, ndim, mode;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    CliFlags flags;

    app.add_option("subcommand", sub, "pdp | autocorr | stats | ber | link | leakage | defaults")
        ->required()
        ->check(CLI::IsMember(subcommand_names()));
    app.add_option("--config", config_path, "YAML scenario file (defaults when omitted)");
    auto *seed_opt = app.add_option("--seed", seed, "master seed; overrides " + std::string(kSeedEnvVar));
    app.add_option("--out", flags.out_dir, "output directory")->capture_default_str();
    auto *trials_opt = app.add_option("--trials", trials, "Monte Carlo trials per BER point")
                           ->check(CLI::PositiveNumber);
    auto *snr_opt = app.add_option("--snr-db", snr, "comma separated SNR values [dB]");
    auto *ebn0_opt = app.add_option("--ebn0-db", ebn0, "comma separated Eb/N0 values [dB]");
    auto *tsym_opt = app.add_option("--tsym", tsym, "comma separated symbol periods [s]");
    auto *ndim_opt = app.add_option("--ndim", ndim, "comma separated signalling dimensions");
    auto *mode_opt = app.add_option("--mode", mode, "leakage channel mode")
                         ->check(CLI::IsMember({"mean", "realization"}));
    snr_opt->excludes(ebn0_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*seed_opt) flags.seed = seed;
        if (*trials_opt) flags.trials = trials;
        if (*snr_opt) flags.snr_db = parse_number_list(snr, "--snr-db");
        if (*ebn0_opt) flags.ebn0_db = parse_number_list(ebn0, "--ebn0-db");
        if (*tsym_opt) flags.tsym = parse_number_list(tsym, "--tsym");
        if (*ndim_opt) flags.ndim = parse_count_list(ndim, "--ndim");
        if (*mode_opt) flags.mode = mode;

        ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_scenario(config_path);
        cfg.link.seed = resolve_seed(flags, std::getenv(kSeedEnvVar), cfg.link.seed);
        const RunOutcome r = run_subcommand(sub, cfg, flags, std::cout);
        for (const auto &f : r.files) std::cout << "wrote " << f << "\n";
        return r.status;
    } catch (const std::exception &e) {
        std::cerr << "diffadv: error: " << e.what() << "\n";
        return 1;
    }
}
