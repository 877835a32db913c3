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

#pragma once

#include "diffadv/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diffadv {

/// Command line overrides. Lists are comma separated on the command line;
/// an empty string gives an empty list.
struct CliFlags {
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::optional<std::size_t> trials;
    std::optional<std::vector<double>> snr_db;
    std::optional<std::vector<double>> ebn0_db;
    std::optional<std::vector<double>> tsym;
    std::optional<std::vector<std::size_t>> ndim;
    std::optional<std::string> mode;
};

inline constexpr const char *kSeedEnvVar = "DIFFADV_SEED";

inline const std::vector<std::string> &subcommand_names() {
    static const std::vector<std::string> names{"pdp", "autocorr", "stats", "ber", "link", "leakage", "defaults"};
    return names;
}

/// Seed precedence: --seed, then DIFFADV_SEED (pass its value, if set), then the config.
std::uint64_t resolve_seed(const CliFlags &flags, const char *env_value, std::uint64_t config_seed);

/// Parses "1,2.5,3" into numbers; "" gives an empty list.
std::vector<double> parse_number_list(const std::string &text, const std::string &flag);
std::vector<std::size_t> parse_count_list(const std::string &text, const std::string &flag);

struct RunOutcome {
    int status = 0;
    std::vector<std::string> files; ///< paths written, in order
};

/// Runs one subcommand. `config` must already carry the resolved seed.
/// Human-readable results go to `out`. Module errors propagate as exceptions.
RunOutcome run_subcommand(const std::string &name, const ScenarioConfig &config, const CliFlags &flags,
                          std::ostream &out);

/// "diffadv <version> subcommand=<name> config_hash=<hash> seed=<seed>"
std::string provenance_line(const std::string &name, const ScenarioConfig &config);

} // namespace diffadv
